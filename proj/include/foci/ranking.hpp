#ifndef FOCI_RANKING_HPP
#define FOCI_RANKING_HPP

#include <span>
#include <string>
#include <vector>

#include "foci/data.hpp"
#include "foci/solver.hpp"

namespace foci {

enum class SimilarityMetric { kCosine, kPcc, kEuclidean };

// Throws ContractError on an unknown name; accepts "cosine", "pcc",
// "euclidean".
SimilarityMetric parse_metric(const std::string& name);
std::string metric_name(SimilarityMetric metric);

// The question expressed in latent-foci space: the sum of the P rows of its
// in-vocabulary words, one contribution per occurrence. Skips words missing
// from the vocabulary; throws OutOfVocabularyError if every word is.
std::vector<double> question_domain(const DenseMatrix& p, const Vocabulary& vocab,
                                    std::span<const std::string> words);

// Hadamard product restricting a membership row to the question domain.
std::vector<double> project_membership(std::span<const double> u_row,
                                       std::span<const double> domain);

// cosine: a.b/(|a||b|), 0 if either norm is 0; pcc: Pearson correlation, 0 if
// either variance is 0; euclidean: 1/(1 + |a-b|), larger means more similar.
double similarity(std::span<const double> a, std::span<const double> b,
                  SimilarityMetric metric);

struct RankedEntry {
    UserId user;
    double score;

    bool operator==(const RankedEntry&) const = default;
};

// Every candidate 1..m exactly once, descending score, ties broken by
// ascending id. User 0 (the asker) never appears.
using RankedList = std::vector<RankedEntry>;

// Scores each connection by the similarity of its projected membership with
// the asker's. Propagates OutOfVocabularyError from question_domain.
RankedList rank_answerers(const Question& question, const FactorSet& factors,
                          const Vocabulary& vocab, SimilarityMetric metric);

}  // namespace foci

#endif
