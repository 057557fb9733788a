#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "foci/errors.hpp"
#include "foci/ranking.hpp"
#include "foci/solver.hpp"
#include "foci/synthetic.hpp"
#include "test_support.hpp"

using namespace foci;

namespace {

Vocabulary vocab_of(std::vector<std::string> words) {
    return Vocabulary(std::move(words), std::vector<std::size_t>(4, 1));
}

}  // namespace

TEST_CASE("question_domain sums P rows of in-vocabulary words") {
    DenseMatrix p(4, 2);
    p(1, 0) = 0.2;
    p(1, 1) = 0.0;
    p(3, 0) = 0.1;
    p(3, 1) = 0.4;
    const Vocabulary vocab = vocab_of({"w0", "w1", "w2", "w3"});

    const auto single = question_domain(p, vocab, std::vector<std::string>{"w1"});
    CHECK(single[0] == 0.2);
    CHECK(single[1] == 0.0);

    const auto pair = question_domain(p, vocab, std::vector<std::string>{"w1", "w3"});
    CHECK(pair[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(pair[1] == doctest::Approx(0.4).epsilon(1e-15));

    // Repeats contribute once per occurrence; unknown words are skipped.
    const auto repeated =
        question_domain(p, vocab, std::vector<std::string>{"w1", "w1", "nope"});
    CHECK(repeated[0] == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS(question_domain(p, vocab, std::vector<std::string>{"nope", "missing"}),
                    OutOfVocabularyError);
}

TEST_CASE("project_membership is the pointwise product") {
    const std::vector<double> row{1.0, 2.0, 0.0};
    CHECK(project_membership(row, std::vector<double>{3.0, 0.0, 5.0}) ==
          std::vector<double>{3.0, 0.0, 0.0});
    CHECK(project_membership(row, std::vector<double>{1.0, 1.0, 1.0}) == row);
    CHECK(project_membership(row, std::vector<double>{0.0, 0.0, 0.0}) ==
          std::vector<double>{0.0, 0.0, 0.0});
    CHECK_THROWS_AS(project_membership(row, std::vector<double>{1.0}), ContractError);
}

TEST_CASE("similarity metrics") {
    using V = std::vector<double>;
    const V e1{1.0, 0.0};
    const V e2{0.0, 1.0};
    CHECK(similarity(e1, e2, SimilarityMetric::kCosine) == 0.0);
    CHECK(similarity(V{1.0, 1.0}, V{2.0, 2.0}, SimilarityMetric::kCosine) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(similarity(V{1.0, 2.0}, V{2.0, 1.0}, SimilarityMetric::kCosine) ==
          doctest::Approx(0.8).epsilon(1e-14));

    // Zero vector or zero variance scores 0 by convention.
    CHECK(similarity(V{0.0, 0.0}, e1, SimilarityMetric::kCosine) == 0.0);
    CHECK(similarity(V{1.0, 1.0}, V{0.3, 0.9}, SimilarityMetric::kPcc) == 0.0);

    CHECK(similarity(V{1.0, 2.0}, V{2.0, 4.0}, SimilarityMetric::kPcc) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(similarity(V{1.0, 2.0, 3.0}, V{3.0, 2.0, 1.0}, SimilarityMetric::kPcc) ==
          doctest::Approx(-1.0).epsilon(1e-14));

    CHECK(similarity(e1, e1, SimilarityMetric::kEuclidean) == 1.0);
    CHECK(similarity(V{0.0, 0.0}, V{3.0, 4.0}, SimilarityMetric::kEuclidean) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    CHECK_THROWS_AS(similarity(e1, V{1.0}, SimilarityMetric::kCosine), ContractError);
    CHECK(parse_metric("euclidean") == SimilarityMetric::kEuclidean);
    CHECK_THROWS_AS(parse_metric("manhattan"), ContractError);
}

TEST_CASE("rank_answerers covers every candidate with deterministic ties") {
    FactorSet f;
    f.u = DenseMatrix(2, 2);
    f.u(0, 0) = 1.0;
    f.u(1, 1) = 1.0;
    f.v = DenseMatrix::identity(2);
    f.p = DenseMatrix(1, 2);
    f.p(0, 0) = 1.0;
    f.p(0, 1) = 1.0;
    const Vocabulary vocab = vocab_of({"only"});
    Question q{"q", {"only"}, {1}};

    const RankedList single = rank_answerers(q, f, vocab, SimilarityMetric::kEuclidean);
    REQUIRE(single.size() == 1);
    CHECK(single[0].user == 1);

    // Identical rows tie; the smaller id must come first.
    FactorSet tied;
    tied.u = DenseMatrix(4, 2, 0.5);
    tied.v = DenseMatrix::identity(2);
    tied.p = f.p;
    const RankedList list = rank_answerers(q, tied, vocab, SimilarityMetric::kEuclidean);
    REQUIRE(list.size() == 3);
    CHECK(list[0].user == 1);
    CHECK(list[1].user == 2);
    CHECK(list[2].user == 3);
    CHECK(list[0].score == list[2].score);
}

TEST_CASE("ranked lists are complete, asker-free and sorted") {
    Rng rng(61);
    const auto inst = test::random_instance(12, 9, 3, rng);
    FactorSet f = inst.f;
    std::vector<std::string> words;
    std::vector<std::size_t> freqs;
    for (std::size_t j = 0; j < 9; ++j) {
        words.push_back("w" + std::to_string(j));
        freqs.push_back(1);
    }
    const Vocabulary vocab(std::move(words), std::move(freqs));
    const Question q{"q", {"w2", "w5"}, {1}};

    for (const SimilarityMetric metric :
         {SimilarityMetric::kCosine, SimilarityMetric::kPcc, SimilarityMetric::kEuclidean}) {
        const RankedList list = rank_answerers(q, f, vocab, metric);
        REQUIRE(list.size() == 11);
        std::vector<bool> seen(12, false);
        for (const RankedEntry& entry : list) {
            CHECK(entry.user != 0);
            CHECK(!seen[entry.user]);
            seen[entry.user] = true;
        }
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            CHECK(list[i].score >= list[i + 1].score);
            if (list[i].score == list[i + 1].score) {
                CHECK(list[i].user < list[i + 1].user);
            }
        }
        CHECK(rank_answerers(q, f, vocab, metric) == list);
    }
}

TEST_CASE("cosine and pcc orderings are invariant to domain scaling") {
    Rng rng(62);
    const auto inst = test::random_instance(10, 8, 3, rng);
    std::vector<std::string> words;
    std::vector<std::size_t> freqs;
    for (std::size_t j = 0; j < 8; ++j) {
        words.push_back("w" + std::to_string(j));
        freqs.push_back(1);
    }
    const Vocabulary vocab(std::move(words), std::move(freqs));
    const Question q{"q", {"w0", "w3", "w7"}, {1}};

    FactorSet scaled = inst.f;
    for (double& v : scaled.p.values()) v *= 37.5;

    for (const SimilarityMetric metric : {SimilarityMetric::kCosine, SimilarityMetric::kPcc}) {
        const RankedList base = rank_answerers(q, inst.f, vocab, metric);
        const RankedList after = rank_answerers(q, scaled, vocab, metric);
        REQUIRE(base.size() == after.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(base[i].user == after[i].user);
            CHECK(test::rel_err(base[i].score, after[i].score, 1e-12) < 1e-12);
        }
    }
}

TEST_CASE("planted co-members outrank outsiders for in-topic questions") {
    SyntheticSpec spec;
    spec.communities = 2;
    spec.users_per_community = 10;
    spec.p_in = 0.5;
    spec.p_out = 0.02;
    spec.words_per_topic = 12;
    spec.in_topic_rate = 2.5;
    spec.off_topic_rate = 0.15;
    spec.questions_per_topic = 1;

    double in_total = 0.0, out_total = 0.0;
    int rounds = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = 700 + seed;
        const SyntheticInstance inst = generate_synthetic(spec);
        HyperParams h;
        h.k = 2;
        h.seed = seed;
        const auto [factors, trace] = fit(inst.content.weights, inst.network.adjacency, h);

        // The generator's first question always belongs to the asker's topic.
        const Question& q = inst.questions.front();
        const RankedList list =
            rank_answerers(q, factors, inst.vocabulary, SimilarityMetric::kEuclidean);
        double in_rank = 0.0, out_rank = 0.0;
        int in_count = 0, out_count = 0;
        for (std::size_t pos = 0; pos < list.size(); ++pos) {
            if (list[pos].user < spec.users_per_community) {
                in_rank += static_cast<double>(pos + 1);
                ++in_count;
            } else {
                out_rank += static_cast<double>(pos + 1);
                ++out_count;
            }
        }
        in_total += in_rank / in_count;
        out_total += out_rank / out_count;
        ++rounds;
    }
    CHECK(in_total / rounds < out_total / rounds);
}
