#include "locspec/solver.hpp"

#include <cmath>
#include <stdexcept>

#include <lapacke.h>

#include "locspec/rng.hpp"

namespace locspec {

namespace {

double basis_residual(const NormalizedOperator& op, const Vector& values,
                      const DenseMatrix& u) {
    const std::size_t m = u.rows();
    const std::size_t l = u.cols();
    const DenseMatrix au = op.apply(u);
    double worst = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = au(i, j) - values[j] * u(i, j);
            acc += r * r;
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

EigenBasis evd_dense_impl(const NormalizedOperator& op) {
    const std::size_t m = op.size();
    if (m > 10000)
        throw std::invalid_argument("evd_dense_full: m exceeds the dense guard (10000)");
    DenseMatrix a = op.materialize();
    Vector ascending(m);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', static_cast<lapack_int>(m), a.data(),
                       static_cast<lapack_int>(m), ascending.data());
    if (info != 0)
        throw std::runtime_error("evd_dense_full: dsyevd failed to converge");

    // dsyevd returns ascending values with eigenvectors in the columns
    EigenBasis basis{Vector(m), DenseMatrix(m, m), 0.0};
    for (std::size_t j = 0; j < m; ++j) {
        basis.values[j] = ascending[m - 1 - j];
        for (std::size_t i = 0; i < m; ++i) basis.vectors(i, j) = a(i, m - 1 - j);
    }
    fix_column_signs(basis.vectors);
    return basis;
}

}  // namespace

EigenBasis evd_dense_full(const NormalizedOperator& op) {
    EigenBasis basis = evd_dense_impl(op);
    basis.residual = basis_residual(op, basis.values, basis.vectors);
    return basis;
}

EigenBasis evd_randomized(const NormalizedOperator& op, const SolverConfig& cfg) {
    const std::size_t m = op.size();
    const std::size_t width = cfg.l + cfg.oversample;
    if (cfg.l < 1 || cfg.l > m)
        throw std::invalid_argument("evd_randomized: need 1 <= l <= m");
    if (width > m)
        throw std::invalid_argument("evd_randomized: l + oversample exceeds m");

    Rng rng(cfg.seed);
    DenseMatrix sketch(m, width);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < width; ++j) sketch(i, j) = rng.next_gaussian();

    DenseMatrix y = op.apply(sketch);
    DenseMatrix q;
    for (std::size_t it = 0; it < cfg.power_iters; ++it) {
        q = qr_thin(y).q;
        y = op.apply(q);
    }
    q = qr_thin(y).q;

    const DenseMatrix aq = op.apply(q);
    DenseMatrix b = matmul(transpose(q), aq);
    for (std::size_t i = 0; i < width; ++i)
        for (std::size_t j = i + 1; j < width; ++j) {
            const double s = 0.5 * (b(i, j) + b(j, i));
            b(i, j) = s;
            b(j, i) = s;
        }

    SymmetricEvd small = symmetric_evd_dense(b);
    DenseMatrix full_u = matmul(q, small.vectors);

    EigenBasis basis{Vector(cfg.l), DenseMatrix(m, cfg.l), 0.0};
    for (std::size_t j = 0; j < cfg.l; ++j) {
        basis.values[j] = small.values[j];
        for (std::size_t i = 0; i < m; ++i) basis.vectors(i, j) = full_u(i, j);
    }
    fix_column_signs(basis.vectors);
    basis.residual = basis_residual(op, basis.values, basis.vectors);
    return basis;
}

EigenBasis solve(const NormalizedOperator& op, const SolverConfig& cfg) {
    const std::size_t m = op.size();
    if (cfg.l < 1 || cfg.l > m)
        throw std::invalid_argument("solve: need 1 <= l <= m");
    SolverMethod method = cfg.method;
    if (method == SolverMethod::Auto)
        method = m <= 2000 ? SolverMethod::Dense : SolverMethod::Randomized;
    if (method == SolverMethod::Randomized) return evd_randomized(op, cfg);

    EigenBasis full = evd_dense_impl(op);
    if (cfg.l == m) {
        full.residual = basis_residual(op, full.values, full.vectors);
        return full;
    }
    // truncate before measuring the residual; applying A to all m columns
    // costs a full m x m multiply the l retained columns do not need
    EigenBasis basis{Vector(cfg.l), DenseMatrix(m, cfg.l), 0.0};
    for (std::size_t j = 0; j < cfg.l; ++j) {
        basis.values[j] = full.values[j];
        for (std::size_t i = 0; i < m; ++i) basis.vectors(i, j) = full.vectors(i, j);
    }
    basis.residual = basis_residual(op, basis.values, basis.vectors);
    return basis;
}

double residual_check(const NormalizedOperator& op, const EigenBasis& basis) {
    if (basis.vectors.rows() != op.size())
        throw std::invalid_argument("residual_check: dimension mismatch");
    if (basis.values.size() != basis.vectors.cols())
        throw std::invalid_argument("residual_check: values/vectors mismatch");
    return basis_residual(op, basis.values, basis.vectors);
}

EigenBasis weight_by_eigenvalues(const EigenBasis& basis) {
    EigenBasis out = basis;
    for (std::size_t j = 0; j < out.vectors.cols(); ++j)
        for (std::size_t i = 0; i < out.vectors.rows(); ++i)
            out.vectors(i, j) *= basis.values[j];
    return out;
}

}  // namespace locspec
