// Times the OpenMP kernels against the serial naive reference at a few sizes.
// Run manually: build/tools/foci_bench [--check]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "foci/kernels.hpp"
#include "foci/reference.hpp"
#include "foci/rng.hpp"

namespace {

using foci::DenseMatrix;
using foci::SparseMatrix;

DenseMatrix random_dense(std::size_t rows, std::size_t cols, foci::Rng& rng) {
    DenseMatrix m(rows, cols);
    for (double& v : m.values()) v = rng.uniform();
    return m;
}

SparseMatrix random_sparse(std::size_t rows, std::size_t cols, std::size_t per_row,
                           foci::Rng& rng) {
    std::vector<SparseMatrix::Triplet> triplets;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t t = 0; t < per_row; ++t) {
            triplets.push_back({i, rng.below(cols), rng.uniform() + 0.01});
        }
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

template <typename F>
double time_ms(F&& body, int reps) {
    // One warm-up, then the best of `reps`.
    body();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const bool check = argc > 1 && std::strcmp(argv[1], "--check") == 0;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-24s %8s %12s %12s %8s\n", "kernel", "m", "kernel(ms)", "naive(ms)",
                "speedup");

    for (std::size_t m : {200, 400, 800, 1600}) {
        const std::size_t k = 10;
        foci::Rng rng(42 + m);
        const SparseMatrix n = random_sparse(m, m, 16, rng);
        const DenseMatrix u = random_dense(m, k, rng);
        const DenseMatrix v = random_dense(k, k, rng);

        foci::TriProducts fast;
        foci::TriProducts slow;
        const double t_fast =
            time_ms([&] { fast = foci::grouped_tri_products(n, u, v); }, 5);
        const double t_slow =
            time_ms([&] { slow = foci::ref::grouped_tri_products(n, u, v); }, 2);
        std::printf("%-24s %8zu %12.3f %12.3f %7.1fx\n", "grouped_tri_products", m, t_fast,
                    t_slow, t_slow / t_fast);
        if (check) {
            const double err = std::max(
                {foci::ref::rel_frobenius_diff(slow.nt_uv, fast.nt_uv),
                 foci::ref::rel_frobenius_diff(slow.n_uvt, fast.n_uvt),
                 foci::ref::rel_frobenius_diff(slow.ut_nu, fast.ut_nu),
                 foci::ref::rel_frobenius_diff(slow.u_v_g_vt, fast.u_v_g_vt),
                 foci::ref::rel_frobenius_diff(slow.u_vt_g_v, fast.u_vt_g_v),
                 foci::ref::rel_frobenius_diff(slow.g_v_g, fast.g_v_g)});
            std::printf("%-24s %8s max rel err %.2e\n", "", "", err);
        }

        const DenseMatrix b = random_dense(m, k, rng);
        DenseMatrix out;
        const double spmm_fast = time_ms([&] { out = foci::spmm(n, b); }, 5);
        const double spmm_slow = time_ms(
            [&] { out = foci::ref::matmul(foci::ref::to_dense(n), b); }, 2);
        std::printf("%-24s %8zu %12.3f %12.3f %7.1fx\n", "spmm", m, spmm_fast, spmm_slow,
                    spmm_slow / spmm_fast);

        const DenseMatrix x = random_dense(m, 4 * k, rng);
        const double gram_fast = time_ms([&] { out = foci::gram(x); }, 5);
        const double gram_slow = time_ms(
            [&] { out = foci::ref::matmul(foci::ref::transpose(x), x); }, 2);
        std::printf("%-24s %8zu %12.3f %12.3f %7.1fx\n", "gram", m, gram_fast, gram_slow,
                    gram_slow / gram_fast);
    }
    return 0;
}
