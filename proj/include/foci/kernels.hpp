#ifndef FOCI_KERNELS_HPP
#define FOCI_KERNELS_HPP

#include "foci/dense_matrix.hpp"
#include "foci/sparse_matrix.hpp"

namespace foci {

// Matrix kernels sized so one solver iteration costs O((w+m)k^2 + nnz*k).
// Loops parallelize over independent output rows/entries with OpenMP; each
// output element is accumulated by exactly one thread in a fixed order, so
// results are bitwise identical for any thread count.

double frobenius_norm_sq(const DenseMatrix& x);
double frobenius_norm_sq(const SparseMatrix& x);

// A * B for sparse A, dense B. Cost nnz(A) * B.cols.
DenseMatrix spmm(const SparseMatrix& a, const DenseMatrix& b);

// A^T * B without materializing A^T. Requires a.rows == b.rows.
DenseMatrix spmm_t(const SparseMatrix& a, const DenseMatrix& b);

// X^T X; output is exactly symmetric (upper triangle mirrored).
DenseMatrix gram(const DenseMatrix& x);

// Dense products: A*B, A^T*B, A*B^T.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

// The six network-side products of one solver iteration, bracketed so no
// intermediate exceeds max(m+1, k) x k.
struct TriProducts {
    DenseMatrix nt_uv;     // N^T U V
    DenseMatrix n_uvt;     // N U V^T
    DenseMatrix ut_nu;     // U^T N U
    DenseMatrix u_v_g_vt;  // U V (U^T U) V^T
    DenseMatrix u_vt_g_v;  // U V^T (U^T U) V
    DenseMatrix g_v_g;     // (U^T U) V (U^T U)
};

TriProducts grouped_tri_products(const SparseMatrix& n, const DenseMatrix& u,
                                 const DenseMatrix& v);

}  // namespace foci

#endif
