#include "foci/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "foci/errors.hpp"

namespace foci {

SimilarityMetric parse_metric(const std::string& name) {
    if (name == "cosine") return SimilarityMetric::kCosine;
    if (name == "pcc") return SimilarityMetric::kPcc;
    if (name == "euclidean") return SimilarityMetric::kEuclidean;
    throw ContractError("unknown similarity metric \"" + name +
                        "\"; expected cosine, pcc or euclidean");
}

std::string metric_name(SimilarityMetric metric) {
    switch (metric) {
        case SimilarityMetric::kCosine: return "cosine";
        case SimilarityMetric::kPcc: return "pcc";
        case SimilarityMetric::kEuclidean: return "euclidean";
    }
    return "euclidean";
}

std::vector<double> question_domain(const DenseMatrix& p, const Vocabulary& vocab,
                                    std::span<const std::string> words) {
    if (p.rows() != vocab.size()) {
        throw ContractError("P has " + std::to_string(p.rows()) + " rows for a vocabulary of " +
                            std::to_string(vocab.size()) + " words");
    }
    std::vector<double> domain(p.cols(), 0.0);
    bool any = false;
    for (const std::string& word : words) {
        const auto j = vocab.find(word);
        if (!j) continue;
        any = true;
        const auto row = p.row(*j);
        for (std::size_t c = 0; c < domain.size(); ++c) domain[c] += row[c];
    }
    if (!any) {
        throw OutOfVocabularyError("no question word appears in the vocabulary");
    }
    return domain;
}

std::vector<double> project_membership(std::span<const double> u_row,
                                       std::span<const double> domain) {
    if (u_row.size() != domain.size()) {
        throw ContractError("membership row length " + std::to_string(u_row.size()) +
                            " != domain length " + std::to_string(domain.size()));
    }
    std::vector<double> projected(u_row.size());
    for (std::size_t c = 0; c < projected.size(); ++c) projected[c] = u_row[c] * domain[c];
    return projected;
}

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const double inv = 1.0 / static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma *= inv;
    mb *= inv;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return 0.0;
    return cov / (std::sqrt(va) * std::sqrt(vb));
}

double euclidean_similarity(std::span<const double> a, std::span<const double> b) {
    double dist = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        dist += d * d;
    }
    return 1.0 / (1.0 + std::sqrt(dist));
}

}  // namespace

double similarity(std::span<const double> a, std::span<const double> b,
                  SimilarityMetric metric) {
    if (a.size() != b.size()) {
        throw ContractError("similarity of vectors with lengths " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
    }
    switch (metric) {
        case SimilarityMetric::kCosine: return cosine(a, b);
        case SimilarityMetric::kPcc: return pearson(a, b);
        case SimilarityMetric::kEuclidean: return euclidean_similarity(a, b);
    }
    return 0.0;
}

RankedList rank_answerers(const Question& question, const FactorSet& factors,
                          const Vocabulary& vocab, SimilarityMetric metric) {
    const std::vector<double> domain = question_domain(factors.p, vocab, question.words);
    const std::vector<double> asker = project_membership(factors.u.row(0), domain);

    RankedList list;
    list.reserve(factors.u.rows() - 1);
    for (UserId candidate = 1; candidate < factors.u.rows(); ++candidate) {
        const std::vector<double> projected =
            project_membership(factors.u.row(candidate), domain);
        list.push_back({candidate, similarity(asker, projected, metric)});
    }
    std::sort(list.begin(), list.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.user < b.user;
    });
    return list;
}

}  // namespace foci
