#include "foci/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numeric>
#include <thread>

#include "foci/errors.hpp"
#include "foci/rng.hpp"

namespace foci {

namespace {

bool is_accepted(const std::vector<UserId>& accepted, UserId user) {
    return std::binary_search(accepted.begin(), accepted.end(), user);
}

void require_accepted(const std::vector<UserId>& accepted) {
    if (accepted.empty()) throw ContractError("accepted set is empty");
}

std::vector<UserId> sorted_copy(std::vector<UserId> accepted) {
    std::sort(accepted.begin(), accepted.end());
    return accepted;
}

}  // namespace

double reciprocal_rank(const RankedList& list, const std::vector<UserId>& accepted) {
    require_accepted(accepted);
    const std::vector<UserId> acc = sorted_copy(accepted);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (is_accepted(acc, list[i].user)) {
            return 1.0 / static_cast<double>(i + 1);
        }
    }
    return 0.0;
}

double average_precision_at_k(const RankedList& list, const std::vector<UserId>& accepted,
                              std::size_t k_cutoff) {
    require_accepted(accepted);
    if (k_cutoff < 1) throw ContractError("k cutoff must be >= 1");
    const std::vector<UserId> acc = sorted_copy(accepted);
    const std::size_t depth = std::min(k_cutoff, list.size());
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < depth; ++i) {
        if (is_accepted(acc, list[i].user)) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(std::min(k_cutoff, acc.size()));
}

double ndcg_at_k(const RankedList& list, const std::vector<UserId>& accepted,
                 std::size_t k_cutoff) {
    require_accepted(accepted);
    if (k_cutoff < 1) throw ContractError("k cutoff must be >= 1");
    const std::vector<UserId> acc = sorted_copy(accepted);
    const std::size_t depth = std::min(k_cutoff, list.size());
    double dcg = 0.0;
    for (std::size_t i = 0; i < depth; ++i) {
        if (is_accepted(acc, list[i].user)) {
            dcg += 1.0 / std::log2(static_cast<double>(i + 2));
        }
    }
    if (dcg == 0.0) return 0.0;
    double ideal = 0.0;
    const std::size_t ideal_hits = std::min(k_cutoff, acc.size());
    for (std::size_t i = 0; i < ideal_hits; ++i) {
        ideal += 1.0 / std::log2(static_cast<double>(i + 2));
    }
    return dcg / ideal;
}

EvalReport evaluate(const QAInstance& instance, const Ranker& ranker,
                    std::size_t k_cutoff, const std::string& method) {
    EvalReport report;
    report.method = method;
    report.k_cutoff = k_cutoff;
    double mrr = 0.0, map = 0.0, ndcg = 0.0;
    for (const Question& question : instance.questions) {
        RankedList list;
        try {
            list = ranker(question);
        } catch (const OutOfVocabularyError&) {
            ++report.questions_skipped;
            continue;
        }
        mrr += reciprocal_rank(list, question.accepted);
        map += average_precision_at_k(list, question.accepted, k_cutoff);
        ndcg += ndcg_at_k(list, question.accepted, k_cutoff);
        ++report.questions_evaluated;
    }
    if (report.questions_evaluated == 0) {
        throw EvalError("no evaluable questions (all " +
                        std::to_string(report.questions_skipped) +
                        " were out of vocabulary)");
    }
    const double count = static_cast<double>(report.questions_evaluated);
    report.mrr = mrr / count;
    report.map_at_k = map / count;
    report.ndcg_at_k = ndcg / count;
    return report;
}

RankedList baseline_random(const Question& question, std::size_t m, std::size_t trials,
                           std::uint64_t seed) {
    if (m == 0) throw ContractError("no candidates to rank");
    if (trials < 1) throw ContractError("trials must be >= 1");
    Rng rng(mix64(seed ^ fnv1a(question.id)));

    std::vector<double> position_sum(m + 1, 0.0);
    std::vector<UserId> perm(m);
    std::iota(perm.begin(), perm.end(), UserId{1});
    for (std::size_t t = 0; t < trials; ++t) {
        rng.shuffle(perm);
        for (std::size_t pos = 0; pos < m; ++pos) {
            position_sum[perm[pos]] += static_cast<double>(pos + 1);
        }
    }

    RankedList list;
    list.reserve(m);
    const double inv_trials = 1.0 / static_cast<double>(trials);
    for (UserId user = 1; user <= m; ++user) {
        list.push_back({user, -position_sum[user] * inv_trials});
    }
    // Ascending mean position == descending negated mean position.
    std::sort(list.begin(), list.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.user < b.user;
    });
    return list;
}

Ranker baseline_shared_foci(const QAInstance& instance, SharedFociMode mode,
                            HyperParams h, SimilarityMetric metric) {
    if (mode == SharedFociMode::kNetwork) {
        h.alpha = 0.0;
    } else {
        h.beta = 0.0;
    }
    auto [factors, trace] =
        fit(instance.content.weights, instance.network.adjacency, h);

    // Question-independent: similarity of full membership rows, no domain
    // projection. Computed once and returned for every question.
    RankedList list;
    list.reserve(factors.u.rows() - 1);
    for (UserId candidate = 1; candidate < factors.u.rows(); ++candidate) {
        list.push_back(
            {candidate, similarity(factors.u.row(0), factors.u.row(candidate), metric)});
    }
    std::sort(list.begin(), list.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.user < b.user;
    });
    return [list = std::move(list)](const Question&) { return list; };
}

Ranker model_ranker(const QAInstance& instance, const HyperParams& h,
                    SimilarityMetric metric) {
    auto fitted = std::make_shared<std::pair<FactorSet, FitTrace>>(
        fit(instance.content.weights, instance.network.adjacency, h));
    const Vocabulary* vocab = &instance.vocabulary;
    return [fitted, vocab, metric](const Question& question) {
        return rank_answerers(question, fitted->first, *vocab, metric);
    };
}

SweepGrid sweep(const QAInstance& instance, const std::vector<double>& alphas,
                const std::vector<double>& betas, const HyperParams& h,
                SimilarityMetric metric, std::size_t k_cutoff, std::size_t jobs) {
    if (alphas.empty() || betas.empty()) {
        throw ContractError("sweep grids must be non-empty");
    }
    SweepGrid grid;
    grid.alphas = alphas;
    grid.betas = betas;
    grid.k_cutoff = k_cutoff;
    grid.cells.resize(alphas.size() * betas.size());

    auto run_cell = [&](std::size_t index) {
        SweepCell& cell = grid.cells[index];
        cell.alpha = alphas[index / betas.size()];
        cell.beta = betas[index % betas.size()];
        try {
            HyperParams cell_params = h;
            cell_params.alpha = cell.alpha;
            cell_params.beta = cell.beta;
            cell_params.validate();
            const EvalReport report =
                evaluate(instance, model_ranker(instance, cell_params, metric), k_cutoff,
                         "model");
            cell.metrics["mrr"] = report.mrr;
            cell.metrics["map_at_k"] = report.map_at_k;
            cell.metrics["ndcg_at_k"] = report.ndcg_at_k;
        } catch (const Error& e) {
            cell.error = e.what();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, grid.cells.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.cells.size();
                     i = next.fetch_add(1)) {
                    run_cell(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return grid;
}

}  // namespace foci
