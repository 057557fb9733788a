// End-to-end acceptance suite. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any failed. argv[1] is the CLI binary, used by the
// determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foci/eval.hpp"
#include "foci/io.hpp"
#include "foci/kernels.hpp"
#include "foci/ranking.hpp"
#include "foci/reference.hpp"
#include "foci/rng.hpp"
#include "foci/solver.hpp"
#include "foci/synthetic.hpp"

namespace {

using namespace foci;
using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

DenseMatrix random_dense(std::size_t rows, std::size_t cols, Rng& rng, double lo = 0.01,
                         double hi = 1.01) {
    DenseMatrix m(rows, cols);
    for (double& v : m.values()) v = rng.uniform(lo, hi);
    return m;
}

SparseMatrix random_sparse(std::size_t rows, std::size_t cols, double density, Rng& rng) {
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng.uniform() < density) t.push_back({i, j, rng.uniform(0.1, 2.0)});
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

SparseMatrix random_adjacency(std::size_t users, double density, Rng& rng) {
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t i = 0; i < users; ++i)
        for (std::size_t j = 0; j < users; ++j)
            if (i != j && rng.uniform() < density) t.push_back({i, j, 1.0});
    return SparseMatrix::from_triplets(users, users, std::move(t));
}

// Sparse matrix with a fixed number of distinct entries per row.
SparseMatrix fixed_degree_sparse(std::size_t rows, std::size_t cols, std::size_t per_row,
                                 bool skip_diagonal, Rng& rng) {
    std::vector<SparseMatrix::Triplet> t;
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < rows; ++i) {
        picked.clear();
        while (picked.size() < per_row) {
            const std::size_t j = rng.below(cols);
            if (skip_diagonal && j == i) continue;
            if (std::find(picked.begin(), picked.end(), j) == picked.end()) {
                picked.push_back(j);
                t.push_back({i, j, rng.uniform(0.1, 2.0)});
            }
        }
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// --- criteria ---------------------------------------------------------

void gradient_oracle() {
    const auto start = Clock::now();
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t users = 3 + rng.below(6);   // m <= 8
        const std::size_t words = 3 + rng.below(8);   // w <= 10
        const std::size_t k = 1 + rng.below(3);       // k <= 3
        const SparseMatrix s = random_sparse(users, words, 0.4, rng);
        const SparseMatrix n = random_adjacency(users, 0.3, rng);
        FactorSet f{random_dense(users, k, rng), random_dense(k, k, rng),
                    random_dense(words, k, rng)};
        HyperParams h;
        h.alpha = 1.0;
        h.beta = 1.0;
        h.gamma = 0.01;
        h.k = k;

        const Gradients g = gradients(s, n, f, h);
        const double step = 1e-6;
        auto scan = [&](DenseMatrix& block, const DenseMatrix& grad) {
            for (std::size_t i = 0; i < block.size(); ++i) {
                const double original = block.values()[i];
                block.values()[i] = original + step;
                const double up = objective(s, n, f, h);
                block.values()[i] = original - step;
                const double down = objective(s, n, f, h);
                block.values()[i] = original;
                worst = std::max(worst, rel_err(grad.values()[i], (up - down) / (2 * step)));
            }
        };
        scan(f.u, g.du);
        scan(f.v, g.dv);
        scan(f.p, g.dp);
    }
    const double elapsed = seconds_since(start);
    report("gradient-oracle", worst < 1e-4 && elapsed < 10.0,
           fmt("max rel err %.2e vs 1e-4 over 10 instances (%.1f s)", worst, elapsed));
}

void monotonicity_and_nonnegativity() {
    const auto start = Clock::now();
    double worst_increase = 0.0;
    bool nonneg_ok = true;
    bool zero_locked = true;
    std::size_t traces = 0;

    for (const std::size_t m : {20u, 50u, 100u}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const std::size_t users = m + 1;
            const std::size_t words = 2 * users;
            Rng rng(mix64(seed * 1000 + m));
            const SparseMatrix s = random_sparse(users, words, 0.15, rng);
            const SparseMatrix n = random_adjacency(users, 0.1, rng);
            HyperParams h;
            h.k = 5;
            h.seed = seed;
            h.max_iters = 120;

            FactorSet init = random_factors(users, words, h);
            init.u(1, 0) = 0.0;
            init.v(0, 1) = 0.0;
            init.p(2, 2) = 0.0;

            const auto [factors, trace] = fit(s, n, h, &init);
            ++traces;
            for (std::size_t t = 0; t + 1 < trace.objective.size(); ++t) {
                const double a = trace.objective[t];
                const double b = trace.objective[t + 1];
                if (b > a * (1.0 + 1e-9)) {
                    worst_increase = std::max(worst_increase, (b - a) / a);
                }
            }

            // Walk the same iterations step by step for per-step assertions.
            FactorSet f = init;
            for (std::size_t t = 0; t < trace.iterations; ++t) {
                f = update_step(s, n, f, h);
                for (const DenseMatrix* block : {&f.u, &f.v, &f.p}) {
                    for (double v : block->values()) {
                        if (v < 0.0) nonneg_ok = false;
                    }
                }
                if (f.u(1, 0) != 0.0 || f.v(0, 1) != 0.0 || f.p(2, 2) != 0.0) {
                    zero_locked = false;
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    report("monotonicity", worst_increase == 0.0 && elapsed < 60.0,
           fmt("%zu traces, worst relative increase %.2e vs 1e-9 (%.1f s)", traces,
               worst_increase, elapsed));
    report("nonnegativity-zero-locking", nonneg_ok && zero_locked,
           fmt("negative entries: %s, zero entries stayed zero: %s",
               nonneg_ok ? "none" : "FOUND", zero_locked ? "yes" : "NO"));
}

void kernel_oracles() {
    Rng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.below(40);
        const std::size_t inner = 1 + rng.below(30);
        const std::size_t cols = 1 + rng.below(12);
        const SparseMatrix a = random_sparse(rows, inner, 0.3, rng);
        const DenseMatrix b = random_dense(inner, cols, rng, -1.0, 1.0);
        const DenseMatrix bt = random_dense(rows, cols, rng, -1.0, 1.0);
        const DenseMatrix ad = ref::to_dense(a);

        worst = std::max(worst, ref::rel_frobenius_diff(ref::matmul(ad, b), spmm(a, b)));
        worst = std::max(worst, ref::rel_frobenius_diff(
                                    ref::matmul(ref::transpose(ad), bt), spmm_t(a, bt)));
        worst = std::max(worst, ref::rel_frobenius_diff(
                                    ref::matmul(ref::transpose(bt), bt), gram(bt)));
        worst = std::max(
            worst, rel_err(ref::frobenius_norm_sq(ad), frobenius_norm_sq(a)));
    }
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t users = 2 + rng.below(24);
        const std::size_t k = 1 + rng.below(6);
        const SparseMatrix n = random_adjacency(users, 0.3, rng);
        const DenseMatrix u = random_dense(users, k, rng);
        const DenseMatrix v = random_dense(k, k, rng);
        const TriProducts fast = grouped_tri_products(n, u, v);
        const TriProducts slow = ref::grouped_tri_products(n, u, v);
        worst = std::max({worst, ref::rel_frobenius_diff(slow.nt_uv, fast.nt_uv),
                          ref::rel_frobenius_diff(slow.n_uvt, fast.n_uvt),
                          ref::rel_frobenius_diff(slow.ut_nu, fast.ut_nu),
                          ref::rel_frobenius_diff(slow.u_v_g_vt, fast.u_v_g_vt),
                          ref::rel_frobenius_diff(slow.u_vt_g_v, fast.u_vt_g_v),
                          ref::rel_frobenius_diff(slow.g_v_g, fast.g_v_g)});
    }
    report("kernel-oracles", worst < 1e-10,
           fmt("100 random shapes, worst rel Frobenius err %.2e vs 1e-10", worst));
}

void metric_oracles() {
    Rng rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng.below(30);
        std::vector<UserId> order(m);
        std::iota(order.begin(), order.end(), UserId{1});
        rng.shuffle(order);
        RankedList list;
        double score = 100.0;
        for (UserId user : order) {
            score -= rng.uniform(0.0, 0.5);
            list.push_back({user, score});
        }
        std::vector<UserId> accepted;
        for (UserId u = 1; u <= m; ++u)
            if (rng.uniform() < 0.25) accepted.push_back(u);
        if (accepted.empty()) accepted.push_back(1 + rng.below(m));
        const std::size_t k = 5;

        double rr = 0.0;
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (std::find(accepted.begin(), accepted.end(), list[i].user) != accepted.end()) {
                rr = 1.0 / static_cast<double>(i + 1);
                break;
            }
        }
        double ap = 0.0;
        std::size_t hits = 0;
        for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
            if (std::find(accepted.begin(), accepted.end(), list[i].user) != accepted.end()) {
                ++hits;
                ap += static_cast<double>(hits) / static_cast<double>(i + 1);
            }
        }
        ap /= static_cast<double>(std::min(k, accepted.size()));
        double dcg = 0.0;
        for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
            if (std::find(accepted.begin(), accepted.end(), list[i].user) != accepted.end()) {
                dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
            }
        }
        double idcg = 0.0;
        for (std::size_t i = 0; i < std::min(k, accepted.size()); ++i) {
            idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
        }
        const double ndcg = dcg == 0.0 ? 0.0 : dcg / idcg;

        worst = std::max(worst, std::abs(reciprocal_rank(list, accepted) - rr));
        worst = std::max(worst, std::abs(average_precision_at_k(list, accepted, k) - ap));
        worst = std::max(worst, std::abs(ndcg_at_k(list, accepted, k) - ndcg));
    }

    // Random ranker with one relevant answer among 10: MRR -> H_10/10.
    double total = 0.0;
    const int questions = 10000;
    Rng accept_rng(5);
    for (int i = 0; i < questions; ++i) {
        const Question q{"q" + std::to_string(i), {"w"}, {1 + accept_rng.below(10)}};
        total += reciprocal_rank(baseline_random(q, 10, 1, 31), q.accepted);
    }
    const double mrr = total / questions;
    const double expected = 0.2928968253968254;  // H_10 / 10
    const bool pass = worst < 1e-12 && std::abs(mrr - expected) < 0.01;
    report("metric-oracles", pass,
           fmt("1000 lists worst abs err %.2e vs 1e-12; random MRR %.4f vs %.4f +- 0.01",
               worst, mrr, expected));
}

void planted_recovery() {
    const auto start = Clock::now();
    SyntheticSpec spec;  // the demo instance: c=5, 20 users each, p 0.3/0.02
    double model_sum = 0.0, random_sum = 0.0;
    std::size_t seeds = 0;
    for (std::uint64_t seed = 42; seed < 52; ++seed) {
        spec.seed = seed;
        const SyntheticInstance synth = generate_synthetic(spec);
        const QAInstance instance = synth.to_qa_instance();
        HyperParams h;
        h.alpha = 1.0;
        h.beta = 1.0;
        h.gamma = 0.01;
        h.k = 5;
        h.seed = seed;

        const EvalReport model =
            evaluate(instance, model_ranker(instance, h, SimilarityMetric::kEuclidean), 5,
                     "model");
        const std::size_t m = instance.network.connection_count();
        const EvalReport random = evaluate(
            instance,
            [&](const Question& q) { return baseline_random(q, m, 100, seed); }, 5,
            "random");
        model_sum += model.mrr;
        random_sum += random.mrr;
        ++seeds;
    }
    const double model_mrr = model_sum / static_cast<double>(seeds);
    const double random_mrr = random_sum / static_cast<double>(seeds);
    const double ratio = model_mrr / random_mrr;
    const double elapsed = seconds_since(start);
    report("planted-recovery", ratio >= 5.0 && elapsed < 60.0,
           fmt("model MRR %.4f vs random %.4f over %zu seeds: ratio %.2f vs required 5.0 "
               "(%.1f s)",
               model_mrr, random_mrr, seeds, ratio, elapsed));
}

void sweep_trend() {
    // Network carries the communities; content is uninformative unit-weight
    // noise of comparable Frobenius mass. MAP@5 must be higher with the
    // network term on.
    double map_with = 0.0, map_without = 0.0;
    std::size_t seeds = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(mix64(7000 + seed));
        const std::size_t communities = 4, per = 25, users = communities * per;
        const std::size_t words = 30, words_per_user = 3;

        std::vector<SparseMatrix::Triplet> net;
        for (std::size_t i = 0; i < users; ++i) {
            for (std::size_t j = 0; j < users; ++j) {
                if (i == j) continue;
                const double p = (i / per == j / per) ? 0.4 : 0.01;
                if (rng.uniform() < p) net.push_back({i, j, 1.0});
            }
        }
        QAInstance instance;
        instance.network = EgoNetwork{SparseMatrix::from_triplets(users, users, std::move(net))};

        std::vector<SparseMatrix::Triplet> content;
        std::vector<std::string> vocab_words;
        std::vector<std::size_t> freqs(words, 1);
        for (std::size_t w = 0; w < words; ++w) {
            vocab_words.push_back("w" + std::to_string(w / 10) + std::to_string(w % 10));
        }
        for (std::size_t i = 0; i < users; ++i) {
            std::vector<std::size_t> chosen;
            while (chosen.size() < words_per_user) {
                const std::size_t w = rng.below(words);
                if (std::find(chosen.begin(), chosen.end(), w) == chosen.end()) {
                    chosen.push_back(w);
                    content.push_back({i, w, 1.0});
                }
            }
        }
        instance.content =
            UserWordMatrix{SparseMatrix::from_triplets(users, words, std::move(content))};
        instance.vocabulary = Vocabulary(vocab_words, freqs);

        std::vector<UserId> accepted;
        for (std::size_t j = 1; j < per; ++j) {
            if (instance.network.adjacency.at(0, j) != 0.0) accepted.push_back(j);
        }
        if (accepted.empty()) continue;
        for (std::size_t q = 0; q < 20; ++q) {
            Question question;
            question.id = "q" + std::to_string(q);
            for (int t = 0; t < 5; ++t) {
                question.words.push_back(vocab_words[rng.below(words)]);
            }
            question.accepted = accepted;
            instance.questions.push_back(std::move(question));
        }

        HyperParams h;
        h.gamma = 0.01;
        h.k = 4;
        h.seed = seed;
        HyperParams with = h, without = h;
        with.alpha = 1.0;
        with.beta = 1.0;
        without.alpha = 1.0;
        without.beta = 0.0;
        map_with += evaluate(instance, model_ranker(instance, with, SimilarityMetric::kEuclidean),
                             5, "with").map_at_k;
        map_without += evaluate(instance,
                                model_ranker(instance, without, SimilarityMetric::kEuclidean),
                                5, "without").map_at_k;
        ++seeds;
    }
    map_with /= static_cast<double>(seeds);
    map_without /= static_cast<double>(seeds);
    report("sweep-trend", map_with > map_without,
           fmt("MAP@5 %.4f at (alpha=1, beta=1) vs %.4f at (alpha=1, beta=0), %zu seeds",
               map_with, map_without, seeds));
}

void complexity_scaling() {
    const std::size_t k = 10;
    auto median_iteration_seconds = [&](std::size_t m) {
        Rng rng(3000 + m);
        const std::size_t users = m + 1;
        const std::size_t words = 2 * users;
        const SparseMatrix n = fixed_degree_sparse(users, users, 16, true, rng);
        const SparseMatrix s = fixed_degree_sparse(users, words, 32, false, rng);
        HyperParams h;
        h.k = k;
        h.seed = 1;
        FactorSet f = random_factors(users, words, h);

        std::vector<double> samples;
        const std::size_t batch = 10;
        for (int round = 0; round < 7; ++round) {
            const auto start = Clock::now();
            for (std::size_t i = 0; i < batch; ++i) f = update_step(s, n, f, h);
            samples.push_back(seconds_since(start) / static_cast<double>(batch));
        }
        std::sort(samples.begin(), samples.end());
        return samples[samples.size() / 2];
    };

    const double t200 = median_iteration_seconds(200);
    const double t400 = median_iteration_seconds(400);
    const double ratio = t400 / t200;
    report("complexity-scaling", ratio <= 3.0,
           fmt("median iteration %.3f ms (m=200) -> %.3f ms (m=400), ratio %.2f vs 3.0",
               t200 * 1e3, t400 * 1e3, ratio));
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void determinism(const std::string& cli) {
    if (cli.empty()) {
        report("determinism", false, "no CLI path given on the command line");
        return;
    }
    const std::filesystem::path base =
        std::filesystem::temp_directory_path() /
        ("foci_accept_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(base);

    auto shell = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };

    bool ok = true;
    std::string detail = "synth/fit/rank/eval re-runs byte-identical";
    for (const char* round : {"a", "b"}) {
        const std::string dir = (base / round).string();
        ok = ok && shell("synth --out " + dir +
                         " --communities 3 --users-per-community 10 --seed 13"
                         " --words-per-topic 12 --questions-per-topic 2");
        ok = ok && shell("fit --network " + dir + "/network.tsv --content " + dir +
                         "/content.tsv --out " + dir + "/factors.txt --k 4 --seed 21"
                         " --max-iters 80");
        ok = ok && shell("rank --factors " + dir + "/factors.txt --content " + dir +
                         "/content.tsv --questions " + dir + "/questions.jsonl --out " +
                         dir + "/ranked.tsv");
        ok = ok && shell("eval --network " + dir + "/network.tsv --content " + dir +
                         "/content.tsv --questions " + dir + "/questions.jsonl --out " +
                         dir + "/report.json --k 4 --seed 21 --max-iters 80");
    }
    if (!ok) {
        detail = "a pipeline command failed";
    } else {
        for (const char* name :
             {"network.tsv", "content.tsv", "questions.jsonl", "manifest.json",
              "factors.txt", "factors.txt.trace.json", "ranked.tsv", "report.json"}) {
            if (slurp(base / "a" / name) != slurp(base / "b" / name) ||
                slurp(base / "a" / name).empty()) {
                ok = false;
                detail = std::string("mismatch or empty output in ") + name;
                break;
            }
        }
    }
    std::error_code ec;
    std::filesystem::remove_all(base, ec);
    report("determinism", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    gradient_oracle();
    monotonicity_and_nonnegativity();
    kernel_oracles();
    metric_oracles();
    planted_recovery();
    sweep_trend();
    complexity_scaling();
    determinism(cli);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
    } else {
        std::printf("all criteria passed\n");
    }
    return failures == 0 ? 0 : 1;
}
