#ifndef FOCI_EVAL_HPP
#define FOCI_EVAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foci/data.hpp"
#include "foci/ranking.hpp"
#include "foci/solver.hpp"

namespace foci {

// 1/r for the first accepted user at 1-based position r; 0 if none appears.
// Throws ContractError on an empty accepted set.
double reciprocal_rank(const RankedList& list, const std::vector<UserId>& accepted);

// (sum of precision@i over hits at i <= k) / min(k, |accepted|).
double average_precision_at_k(const RankedList& list,
                              const std::vector<UserId>& accepted,
                              std::size_t k_cutoff);

// Binary-gain DCG@k / IDCG@k with 1/log2(i+1) discounts; 0 when the top k
// holds no accepted user.
double ndcg_at_k(const RankedList& list, const std::vector<UserId>& accepted,
                 std::size_t k_cutoff);

using Ranker = std::function<RankedList(const Question&)>;

struct EvalReport {
    std::string method;
    double mrr = 0.0;
    double map_at_k = 0.0;
    double ndcg_at_k = 0.0;
    std::size_t k_cutoff = 0;
    std::size_t questions_evaluated = 0;
    std::size_t questions_skipped = 0;
};

// Macro-averages the three metrics over the instance's questions. Questions
// whose ranker raises OutOfVocabularyError are skipped and counted. Throws
// EvalError when nothing is evaluable.
EvalReport evaluate(const QAInstance& instance, const Ranker& ranker,
                    std::size_t k_cutoff, const std::string& method);

// The Random baseline: `trials` uniform permutations of {1..m}; candidates
// are ordered by ascending mean position (ties by id) and scored with the
// negated mean position. The stream is derived from seed and the question id,
// so repeated ids get identical lists.
RankedList baseline_random(const Question& question, std::size_t m,
                           std::size_t trials, std::uint64_t seed);

enum class SharedFociMode { kNetwork, kContent };

// The Shared Foci baseline: fits with alpha=0 (network mode) or beta=0
// (content mode) and ranks every question identically by the similarity of
// full membership rows, without the question-domain projection.
Ranker baseline_shared_foci(const QAInstance& instance, SharedFociMode mode,
                            HyperParams h, SimilarityMetric metric);

struct SweepCell {
    double alpha = 0.0;
    double beta = 0.0;
    std::map<std::string, double> metrics;  // mrr, map_at_k, ndcg_at_k
    std::string error;                      // empty when the cell succeeded
};

struct SweepGrid {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::size_t k_cutoff = 0;
    std::vector<SweepCell> cells;  // row-major over alphas x betas
};

// One fit + evaluate per (alpha, beta) cell with the seed held fixed.
// Per-cell failures are recorded in the cell; the sweep continues. `jobs`
// bounds the worker-thread count; cell order in the result is always
// row-major regardless of scheduling.
SweepGrid sweep(const QAInstance& instance, const std::vector<double>& alphas,
                const std::vector<double>& betas, const HyperParams& h,
                SimilarityMetric metric, std::size_t k_cutoff,
                std::size_t jobs = 1);

// The model ranker used by eval and sweep: fits once, then ranks questions
// against the fitted factors.
Ranker model_ranker(const QAInstance& instance, const HyperParams& h,
                    SimilarityMetric metric);

}  // namespace foci

#endif
