#ifndef FOCI_REFERENCE_HPP
#define FOCI_REFERENCE_HPP

#include "foci/dense_matrix.hpp"
#include "foci/kernels.hpp"
#include "foci/sparse_matrix.hpp"

namespace foci::ref {

// Serial naive implementations used as oracles by the test suite and as the
// baseline side of the kernel benchmark. Deliberately written as plain
// triple loops over densified inputs; must stay independent of foci/kernels.

DenseMatrix to_dense(const SparseMatrix& x);
DenseMatrix transpose(const DenseMatrix& x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
double frobenius_norm_sq(const DenseMatrix& x);

// Same six products as foci::grouped_tri_products, via dense naive algebra.
TriProducts grouped_tri_products(const SparseMatrix& n, const DenseMatrix& u,
                                 const DenseMatrix& v);

// ||a - b||_F / max(||a||_F, 1e-300), for oracle comparisons.
double rel_frobenius_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace foci::ref

#endif
