#include "foci/reference.hpp"

#include <algorithm>
#include <cmath>

namespace foci::ref {

DenseMatrix to_dense(const SparseMatrix& x) {
    DenseMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto cols = x.row_cols(i);
        const auto vals = x.row_values(i);
        for (std::size_t t = 0; t < cols.size(); ++t) out(i, cols[t]) = vals[t];
    }
    return out;
}

DenseMatrix transpose(const DenseMatrix& x) {
    DenseMatrix out(x.cols(), x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(j, i) = x(i, j);
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) sum += a(i, l) * b(l, j);
            out(i, j) = sum;
        }
    return out;
}

double frobenius_norm_sq(const DenseMatrix& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) sum += x(i, j) * x(i, j);
    return sum;
}

TriProducts grouped_tri_products(const SparseMatrix& n, const DenseMatrix& u,
                                 const DenseMatrix& v) {
    const DenseMatrix nd = to_dense(n);
    const DenseMatrix nt = transpose(nd);
    const DenseMatrix ut = transpose(u);
    const DenseMatrix vt = transpose(v);
    const DenseMatrix g = ref::matmul(ut, u);

    TriProducts out;
    out.nt_uv = ref::matmul(ref::matmul(nt, u), v);
    out.n_uvt = ref::matmul(ref::matmul(nd, u), vt);
    out.ut_nu = ref::matmul(ref::matmul(ut, nd), u);
    out.u_v_g_vt = ref::matmul(ref::matmul(ref::matmul(u, v), g), vt);
    out.u_vt_g_v = ref::matmul(ref::matmul(ref::matmul(u, vt), g), v);
    out.g_v_g = ref::matmul(ref::matmul(g, v), g);
    return out;
}

double rel_frobenius_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double diff = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double d = a(i, j) - b(i, j);
            diff += d * d;
        }
    const double base = ref::frobenius_norm_sq(a);
    return std::sqrt(diff) / std::max(std::sqrt(base), 1e-300);
}

}  // namespace foci::ref
