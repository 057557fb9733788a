#include "foci/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foci/errors.hpp"
#include "foci/kernels.hpp"
#include "foci/rng.hpp"

namespace foci {

namespace {

void check_dims(const SparseMatrix& s, const SparseMatrix& n, const FactorSet& f) {
    const std::size_t users = n.rows();
    const std::size_t words = s.cols();
    const std::size_t k = f.u.cols();
    if (n.cols() != users) {
        throw ContractError("ego network must be square, got " + std::to_string(n.rows()) +
                            "x" + std::to_string(n.cols()));
    }
    if (s.rows() != users) {
        throw ContractError("user-word matrix has " + std::to_string(s.rows()) +
                            " rows for " + std::to_string(users) + " users");
    }
    if (f.u.rows() != users || f.v.rows() != k || f.v.cols() != k ||
        f.p.rows() != words || f.p.cols() != k) {
        throw ContractError("factor dimensions inconsistent with instance (users=" +
                            std::to_string(users) + ", words=" + std::to_string(words) +
                            ", k=" + std::to_string(k) + ")");
    }
}

void check_nonnegative(const FactorSet& f) {
    for (const DenseMatrix* m : {&f.u, &f.v, &f.p}) {
        for (double v : m->values()) {
            if (v < 0.0) throw ContractError("factor matrices must be non-negative");
        }
    }
}

// <A, B> over all entries; A and B share dimensions.
double dot(const DenseMatrix& a, const DenseMatrix& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a.values()[i] * b.values()[i];
    return sum;
}

// sum over stored entries of X of x_ij * (A row i . B row j).
double sparse_inner(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& b) {
    double sum = 0.0;
    const std::size_t k = a.cols();
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto cols = x.row_cols(i);
        const auto vals = x.row_values(i);
        const double* a_row = a.data() + i * k;
        for (std::size_t t = 0; t < cols.size(); ++t) {
            const double* b_row = b.data() + cols[t] * k;
            double d = 0.0;
            for (std::size_t c = 0; c < k; ++c) d += a_row[c] * b_row[c];
            sum += vals[t] * d;
        }
    }
    return sum;
}

DenseMatrix scaled(double scale, const DenseMatrix& a) {
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = scale * a.values()[i];
    return out;
}

// out = scale_a*A + scale_b*B, elementwise.
DenseMatrix combine(double scale_a, const DenseMatrix& a, double scale_b,
                    const DenseMatrix& b) {
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.values()[i] = scale_a * a.values()[i] + scale_b * b.values()[i];
    }
    return out;
}

void add_scaled(DenseMatrix& target, double scale, const DenseMatrix& x) {
    for (std::size_t i = 0; i < target.size(); ++i) {
        target.values()[i] += scale * x.values()[i];
    }
}

// entry <- entry * sqrt(num / max(den, eps)); preserves zeros exactly and
// leaves entries untouched where num == den >= eps.
DenseMatrix multiplicative_scale(const DenseMatrix& base, const DenseMatrix& num,
                                 const DenseMatrix& den, double eps) {
    DenseMatrix out(base.rows(), base.cols());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double d = std::max(den.values()[i], eps);
        out.values()[i] = base.values()[i] * std::sqrt(num.values()[i] / d);
    }
    return out;
}

}  // namespace

void HyperParams::validate() const {
    if (alpha < 0.0 || beta < 0.0) throw ContractError("alpha and beta must be >= 0");
    if (alpha == 0.0 && beta == 0.0) throw ContractError("alpha and beta cannot both be zero");
    if (!(gamma > 0.0)) throw ContractError("gamma must be positive");
    if (k < 1) throw ContractError("k must be >= 1");
    if (max_iters < 1) throw ContractError("max_iters must be >= 1");
    if (!(tol > 0.0)) throw ContractError("tol must be positive");
    if (!(eps > 0.0)) throw ContractError("eps must be positive");
}

ObjectiveParts objective_parts(const SparseMatrix& s, const SparseMatrix& n,
                               const FactorSet& f) {
    check_dims(s, n, f);
    const DenseMatrix gu = gram(f.u);
    const DenseMatrix gp = gram(f.p);

    // ||S - U P^T||^2 = ||S||^2 - 2<S, U P^T> + tr((U^T U)(P^T P))
    const double content =
        frobenius_norm_sq(s) - 2.0 * sparse_inner(s, f.u, f.p) + dot(gu, gp);

    // ||N - U V U^T||^2 = ||N||^2 - 2<N, U V U^T> + tr(V^T G V G), G = U^T U
    const DenseMatrix uv = matmul(f.u, f.v);
    const DenseMatrix gvg = matmul(gu, matmul(f.v, gu));
    const double network =
        frobenius_norm_sq(n) - 2.0 * sparse_inner(n, uv, f.u) + dot(f.v, gvg);

    const double regularizer =
        frobenius_norm_sq(f.u) + frobenius_norm_sq(f.v) + frobenius_norm_sq(f.p);
    return {content, network, regularizer};
}

double objective(const SparseMatrix& s, const SparseMatrix& n, const FactorSet& f,
                 const HyperParams& h) {
    const ObjectiveParts parts = objective_parts(s, n, f);
    return h.alpha * parts.content + h.beta * parts.network + h.gamma * parts.regularizer;
}

Gradients gradients(const SparseMatrix& s, const SparseMatrix& n, const FactorSet& f,
                    const HyperParams& h) {
    check_dims(s, n, f);
    const DenseMatrix gu = gram(f.u);

    Gradients out;
    out.du = DenseMatrix(f.u.rows(), f.u.cols());
    add_scaled(out.du, 2.0 * h.gamma, f.u);
    out.dv = DenseMatrix(f.v.rows(), f.v.cols());
    add_scaled(out.dv, 2.0 * h.gamma, f.v);
    out.dp = DenseMatrix(f.p.rows(), f.p.cols());
    add_scaled(out.dp, 2.0 * h.gamma, f.p);

    if (h.alpha != 0.0) {
        add_scaled(out.du, -2.0 * h.alpha, spmm(s, f.p));
        add_scaled(out.du, 2.0 * h.alpha, matmul(f.u, gram(f.p)));
        add_scaled(out.dp, -2.0 * h.alpha, spmm_t(s, f.u));
        add_scaled(out.dp, 2.0 * h.alpha, matmul(f.p, gu));
    }
    if (h.beta != 0.0) {
        const TriProducts tri = grouped_tri_products(n, f.u, f.v);
        add_scaled(out.du, -2.0 * h.beta, tri.nt_uv);
        add_scaled(out.du, -2.0 * h.beta, tri.n_uvt);
        add_scaled(out.du, 2.0 * h.beta, tri.u_v_g_vt);
        add_scaled(out.du, 2.0 * h.beta, tri.u_vt_g_v);
        add_scaled(out.dv, -2.0 * h.beta, tri.ut_nu);
        add_scaled(out.dv, 2.0 * h.beta, tri.g_v_g);
    }
    return out;
}

FactorSet update_step(const SparseMatrix& s, const SparseMatrix& n, const FactorSet& f,
                      const HyperParams& h) {
    check_dims(s, n, f);
    check_nonnegative(f);

    const DenseMatrix gu = gram(f.u);
    FactorSet next;

    {
        DenseMatrix num(f.u.rows(), f.u.cols());
        DenseMatrix den(f.u.rows(), f.u.cols());
        add_scaled(den, h.gamma, f.u);
        if (h.alpha != 0.0) {
            add_scaled(num, h.alpha, spmm(s, f.p));
            add_scaled(den, h.alpha, matmul(f.u, gram(f.p)));
        }
        if (h.beta != 0.0) {
            const TriProducts tri = grouped_tri_products(n, f.u, f.v);
            add_scaled(num, h.beta, tri.nt_uv);
            add_scaled(num, h.beta, tri.n_uvt);
            add_scaled(den, h.beta, tri.u_v_g_vt);
            add_scaled(den, h.beta, tri.u_vt_g_v);
            next.v = multiplicative_scale(
                f.v, scaled(h.beta, tri.ut_nu),
                combine(h.beta, tri.g_v_g, h.gamma, f.v), h.eps);
        } else {
            next.v = f.v;
        }
        next.u = multiplicative_scale(f.u, num, den, h.eps);
    }

    if (h.alpha != 0.0) {
        next.p = multiplicative_scale(f.p, scaled(h.alpha, spmm_t(s, f.u)),
                                      combine(h.alpha, matmul(f.p, gu), h.gamma, f.p),
                                      h.eps);
    } else {
        next.p = f.p;
    }
    return next;
}

FactorSet random_factors(std::size_t users, std::size_t words, const HyperParams& h) {
    Rng rng(h.seed);
    FactorSet f;
    f.u = DenseMatrix(users, h.k);
    for (double& v : f.u.values()) v = rng.uniform(0.01, 1.01);
    f.v = DenseMatrix(h.k, h.k);
    for (double& v : f.v.values()) v = rng.uniform(0.01, 1.01);
    f.p = DenseMatrix(words, h.k);
    for (double& v : f.p.values()) v = rng.uniform(0.01, 1.01);
    return f;
}

std::pair<FactorSet, FitTrace> fit(const SparseMatrix& s, const SparseMatrix& n,
                                   const HyperParams& h, const FactorSet* init) {
    h.validate();
    FactorSet f = init ? *init : random_factors(n.rows(), s.cols(), h);

    FitTrace trace;
    trace.objective.push_back(objective(s, n, f, h));
    if (!std::isfinite(trace.objective.back())) {
        throw NumericError("objective is not finite at initialization", 0);
    }
    trace.stop = StopReason::kMaxIters;
    for (std::size_t t = 1; t <= h.max_iters; ++t) {
        f = update_step(s, n, f, h);
        const double value = objective(s, n, f, h);
        if (!std::isfinite(value)) {
            throw NumericError("objective became non-finite at iteration " +
                               std::to_string(t), t);
        }
        const double previous = trace.objective.back();
        trace.objective.push_back(value);
        trace.iterations = t;
        if (std::abs(value - previous) / std::max(previous, h.eps) < h.tol) {
            trace.stop = StopReason::kConverged;
            break;
        }
    }
    return {std::move(f), trace};
}

}  // namespace foci
