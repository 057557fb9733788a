#include "foci/kernels.hpp"

#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "foci/errors.hpp"

namespace foci {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ContractError(what);
}

std::string shape(const DenseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

std::string shape(const SparseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

int column_block_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

double frobenius_norm_sq(const DenseMatrix& x) {
    double sum = 0.0;
    for (double v : x.values()) sum += v * v;
    return sum;
}

double frobenius_norm_sq(const SparseMatrix& x) {
    double sum = 0.0;
    for (double v : x.values()) sum += v * v;
    return sum;
}

DenseMatrix spmm(const SparseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "spmm: " + shape(a) + " * " + shape(b));
    DenseMatrix out(a.rows(), b.cols());
    const std::size_t bc = b.cols();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto cols = a.row_cols(i);
        const auto vals = a.row_values(i);
        double* out_row = out.data() + i * bc;
        for (std::size_t t = 0; t < cols.size(); ++t) {
            const double v = vals[t];
            const double* b_row = b.data() + cols[t] * bc;
            for (std::size_t c = 0; c < bc; ++c) out_row[c] += v * b_row[c];
        }
    }
    return out;
}

DenseMatrix spmm_t(const SparseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows(), "spmm_t: " + shape(a) + "^T * " + shape(b));
    DenseMatrix out(a.cols(), b.cols());
    const std::size_t bc = b.cols();
    // Threads own disjoint output-column ranges and each scans all of A, so
    // every output entry accumulates in row order no matter the thread count.
    const std::size_t nblocks =
        std::min<std::size_t>(static_cast<std::size_t>(column_block_count()), bc ? bc : 1);
#pragma omp parallel for schedule(static)
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        const std::size_t c0 = blk * bc / nblocks;
        const std::size_t c1 = (blk + 1) * bc / nblocks;
        if (c0 == c1) continue;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const auto cols = a.row_cols(i);
            const auto vals = a.row_values(i);
            const double* b_row = b.data() + i * bc;
            for (std::size_t t = 0; t < cols.size(); ++t) {
                const double v = vals[t];
                double* out_row = out.data() + cols[t] * bc;
                for (std::size_t c = c0; c < c1; ++c) out_row[c] += v * b_row[c];
            }
        }
    }
    return out;
}

DenseMatrix gram(const DenseMatrix& x) {
    const std::size_t k = x.cols();
    DenseMatrix out(k, k);
#pragma omp parallel for schedule(static)
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            double sum = 0.0;
            for (std::size_t r = 0; r < x.rows(); ++r) {
                sum += x(r, a) * x(r, b);
            }
            out(a, b) = sum;
            out(b, a) = sum;
        }
    }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "matmul: " + shape(a) + " * " + shape(b));
    DenseMatrix out(a.rows(), b.cols());
    const std::size_t bc = b.cols();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* out_row = out.data() + i * bc;
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const double v = a(i, l);
            const double* b_row = b.data() + l * bc;
            for (std::size_t c = 0; c < bc; ++c) out_row[c] += v * b_row[c];
        }
    }
    return out;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows(), "matmul_tn: " + shape(a) + "^T * " + shape(b));
    DenseMatrix out(a.cols(), b.cols());
    const std::size_t bc = b.cols();
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < a.cols(); ++r) {
        double* out_row = out.data() + r * bc;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const double v = a(i, r);
            const double* b_row = b.data() + i * bc;
            for (std::size_t c = 0; c < bc; ++c) out_row[c] += v * b_row[c];
        }
    }
    return out;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.cols(), "matmul_nt: " + shape(a) + " * " + shape(b) + "^T");
    DenseMatrix out(a.rows(), b.rows());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            double sum = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) sum += a(i, l) * b(j, l);
            out(i, j) = sum;
        }
    }
    return out;
}

TriProducts grouped_tri_products(const SparseMatrix& n, const DenseMatrix& u,
                                 const DenseMatrix& v) {
    require(n.rows() == n.cols(), "grouped_tri_products: N not square, " + shape(n));
    require(u.rows() == n.rows(), "grouped_tri_products: U rows " + shape(u) +
                                      " vs N " + shape(n));
    require(v.rows() == u.cols() && v.cols() == u.cols(),
            "grouped_tri_products: V " + shape(v) + " vs k=" + std::to_string(u.cols()));

    TriProducts out;
    const DenseMatrix uv = matmul(u, v);       // (m+1) x k
    const DenseMatrix uvt = matmul_nt(u, v);   // (m+1) x k
    out.nt_uv = spmm_t(n, uv);
    out.n_uvt = spmm(n, uvt);
    out.ut_nu = matmul_tn(u, spmm(n, u));

    const DenseMatrix g = gram(u);             // k x k
    const DenseMatrix vg = matmul(v, g);
    out.u_v_g_vt = matmul(u, matmul_nt(vg, v));
    const DenseMatrix vtg = matmul_tn(v, g);
    out.u_vt_g_v = matmul(u, matmul(vtg, v));
    out.g_v_g = matmul(g, matmul(v, g));
    return out;
}

}  // namespace foci
