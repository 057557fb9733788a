#ifndef FOCI_SOLVER_HPP
#define FOCI_SOLVER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "foci/dense_matrix.hpp"
#include "foci/sparse_matrix.hpp"

namespace foci {

struct HyperParams {
    double alpha = 1.0;        // content weight
    double beta = 1.0;         // network weight
    double gamma = 0.01;       // regularization
    std::size_t k = 50;        // latent foci
    std::size_t max_iters = 300;
    double tol = 1e-6;         // relative objective-change stop threshold
    double eps = 1e-12;        // denominator guard
    std::uint64_t seed = 0;

    // alpha and beta may not both be zero; gamma, tol, eps must be positive.
    void validate() const;
};

// Non-negative latent matrices: U (m+1)xk users-by-foci, V kxk foci
// correlations, P wxk words-by-foci.
struct FactorSet {
    DenseMatrix u;
    DenseMatrix v;
    DenseMatrix p;
};

enum class StopReason { kConverged, kMaxIters };

struct FitTrace {
    std::vector<double> objective;  // initial value plus one per iteration
    std::size_t iterations = 0;
    StopReason stop = StopReason::kMaxIters;
};

// alpha*||S - U P^T||_F^2 + beta*||N - U V U^T||_F^2
//   + gamma*(||U||_F^2 + ||V||_F^2 + ||P||_F^2),
// expanded around the sparse entries of S and N (neither is densified).
// Pure function; hyper-parameters are not validated here so callers can
// evaluate single terms with zero weights.
double objective(const SparseMatrix& s, const SparseMatrix& n,
                 const FactorSet& f, const HyperParams& h);

// The three objective terms before weighting: {content, network, regularizer}.
struct ObjectiveParts {
    double content;
    double network;
    double regularizer;
};
ObjectiveParts objective_parts(const SparseMatrix& s, const SparseMatrix& n,
                               const FactorSet& f);

struct Gradients {
    DenseMatrix du;
    DenseMatrix dv;
    DenseMatrix dp;
};

// dU = 2(alpha(-SP + U P^T P)
//        + beta(-N^T U V - N U V^T + U V U^T U V^T + U V^T U^T U V) + gamma U)
// dV = 2(beta(-U^T N U + U^T U V U^T U) + gamma V)
// dP = 2(alpha(-S^T U + P U^T U) + gamma P)
Gradients gradients(const SparseMatrix& s, const SparseMatrix& n,
                    const FactorSet& f, const HyperParams& h);

// One simultaneous multiplicative update: every right-hand side is evaluated
// against the input factors. Each entry is rescaled by the square root of a
// non-negative ratio, with the denominator clamped below by h.eps, so
// non-negativity is closed and zero entries stay zero. With beta == 0, V is
// returned unchanged; with alpha == 0, P is. Throws ContractError if an
// input entry is negative.
FactorSet update_step(const SparseMatrix& s, const SparseMatrix& n,
                      const FactorSet& f, const HyperParams& h);

// Runs update_step until the relative objective change drops below h.tol or
// h.max_iters is reached. Without an init, factors start i.i.d. uniform on
// (0.01, 1.01) from mt19937_64(h.seed), filled U row-major, then V, then P.
// Throws NumericError (carrying the iteration) on a non-finite objective.
std::pair<FactorSet, FitTrace> fit(const SparseMatrix& s, const SparseMatrix& n,
                                   const HyperParams& h,
                                   const FactorSet* init = nullptr);

// The initialization fit() uses when no init is given.
FactorSet random_factors(std::size_t users, std::size_t words,
                         const HyperParams& h);

}  // namespace foci

#endif
