#include "locspec/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "locspec/rng.hpp"

namespace locspec {

namespace {

double squared_distance(const DenseMatrix& x, std::size_t i, std::size_t j) {
    const double* a = x.row_ptr(i);
    const double* b = x.row_ptr(j);
    double acc = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
    }
    return acc;
}

double median_of(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double resolve_bandwidth(const DenseMatrix& x, const KernelConfig& config) {
    if (config.bandwidth) {
        if (!(*config.bandwidth > 0.0))
            throw std::invalid_argument("kernel bandwidth must be > 0");
        return *config.bandwidth;
    }
    const std::size_t m = x.rows();
    double eps;
    if (m <= 2000) {
        eps = median_squared_distance_exact(x);
    } else {
        Rng rng(0x6b65726e656cull);  // fixed sampling seed, independent of solver seeds
        std::vector<double> d2(2000);
        for (double& d : d2) {
            std::size_t i = static_cast<std::size_t>(rng.next_below(m));
            std::size_t j = static_cast<std::size_t>(rng.next_below(m - 1));
            if (j >= i) ++j;
            d = squared_distance(x, i, j);
        }
        eps = median_of(d2);
    }
    if (eps <= 0.0)
        throw std::invalid_argument(
            "median heuristic failed: median pairwise distance is zero");
    return eps;
}

}  // namespace

double median_squared_distance_exact(const DenseMatrix& x) {
    const std::size_t m = x.rows();
    std::vector<double> d2;
    d2.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) d2.push_back(squared_distance(x, i, j));
    return median_of(d2);
}

KernelGraph build_gaussian_kernel(const DenseMatrix& x, const KernelConfig& config) {
    if (x.rows() < 2)
        throw std::invalid_argument("build_gaussian_kernel: need at least 2 points");
    if (!x.all_finite())
        throw std::invalid_argument("build_gaussian_kernel: data contains NaN/Inf");

    KernelGraph g;
    g.m_ = x.rows();
    g.mode_ = config.mode;
    g.epsilon_ = resolve_bandwidth(x, config);
    g.x_ = x;
    g.degrees_.assign(g.m_, 0.0);

    if (config.mode == KernelMode::Dense) {
        g.k_ = DenseMatrix(g.m_, g.m_);
        for (std::size_t i = 0; i < g.m_; ++i) {
            g.k_(i, i) = 1.0;
            for (std::size_t j = i + 1; j < g.m_; ++j) {
                const double w = std::exp(-squared_distance(x, i, j) / g.epsilon_);
                g.k_(i, j) = w;
                g.k_(j, i) = w;
            }
        }
        for (std::size_t i = 0; i < g.m_; ++i) {
            double acc = 0.0;
            const double* row = g.k_.row_ptr(i);
            for (std::size_t j = 0; j < g.m_; ++j) acc += row[j];
            g.degrees_[i] = acc;
        }
    } else {
        Vector row(g.m_);
        for (std::size_t i = 0; i < g.m_; ++i) {
            g.kernel_row(i, row);
            double acc = 0.0;
            for (double w : row) acc += w;
            g.degrees_[i] = acc;
        }
    }
    return g;
}

KernelGraph KernelGraph::from_dense_kernel(DenseMatrix k) {
    if (k.rows() != k.cols())
        throw std::invalid_argument("from_dense_kernel: matrix not square");
    if (!k.all_finite())
        throw std::invalid_argument("from_dense_kernel: kernel contains NaN/Inf");
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = i + 1; j < k.cols(); ++j)
            if (k(i, j) != k(j, i))
                throw std::invalid_argument("from_dense_kernel: kernel not symmetric");

    KernelGraph g;
    g.m_ = k.rows();
    g.mode_ = KernelMode::Dense;
    g.epsilon_ = 0.0;
    g.k_ = std::move(k);
    g.degrees_.assign(g.m_, 0.0);
    for (std::size_t i = 0; i < g.m_; ++i) {
        double acc = 0.0;
        const double* row = g.k_.row_ptr(i);
        for (std::size_t j = 0; j < g.m_; ++j) acc += row[j];
        g.degrees_[i] = acc;
    }
    return g;
}

const DenseMatrix& KernelGraph::kernel() const {
    if (mode_ != KernelMode::Dense)
        throw std::logic_error("KernelGraph::kernel: not available in matrix-free mode");
    return k_;
}

double KernelGraph::kernel_entry(std::size_t i, std::size_t j) const {
    if (mode_ == KernelMode::Dense) return k_(i, j);
    return std::exp(-squared_distance(x_, i, j) / epsilon_);
}

void KernelGraph::kernel_row(std::size_t i, Vector& out) const {
    out.resize(m_);
    if (mode_ == KernelMode::Dense) {
        const double* row = k_.row_ptr(i);
        std::copy(row, row + m_, out.begin());
        return;
    }
    for (std::size_t j = 0; j < m_; ++j)
        out[j] = std::exp(-squared_distance(x_, i, j) / epsilon_);
    out[i] = 1.0;
}

Vector degrees(const KernelGraph& g) {
    Vector d(g.size(), 0.0);
    Vector row;
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.kernel_row(i, row);
        double acc = 0.0;
        for (double w : row) acc += w;
        d[i] = acc;
    }
    return d;
}

NormalizedOperator::NormalizedOperator(const KernelGraph& g, NormKind kind)
    : graph_(&g), kind_(kind) {
    const Vector& d = g.degrees();
    for (double di : d)
        if (!(di > 0.0))
            throw std::invalid_argument("NormalizedOperator: zero or negative degree");
    if (kind == NormKind::Symmetric) {
        inv_sqrt_deg_.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) inv_sqrt_deg_[i] = 1.0 / std::sqrt(d[i]);
    } else {
        inv_deg_.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) inv_deg_[i] = 1.0 / d[i];
    }
}

NormalizedOperator normalize_symmetric(const KernelGraph& g) {
    return NormalizedOperator(g, NormKind::Symmetric);
}

NormalizedOperator normalize_row_stochastic(const KernelGraph& g) {
    return NormalizedOperator(g, NormKind::RowStochastic);
}

double NormalizedOperator::entry(std::size_t i, std::size_t j) const {
    const double kij = graph_->kernel_entry(i, j);
    if (kind_ == NormKind::Symmetric) return kij * inv_sqrt_deg_[i] * inv_sqrt_deg_[j];
    return kij * inv_deg_[i];
}

Vector NormalizedOperator::apply(const Vector& v) const {
    const std::size_t m = size();
    if (v.size() != m)
        throw std::invalid_argument("NormalizedOperator::apply: length mismatch");
    Vector y(m, 0.0);
    Vector row;
    for (std::size_t i = 0; i < m; ++i) {
        graph_->kernel_row(i, row);
        double acc = 0.0;
        if (kind_ == NormKind::Symmetric) {
            for (std::size_t j = 0; j < m; ++j)
                acc += row[j] * inv_sqrt_deg_[j] * v[j];
            y[i] = acc * inv_sqrt_deg_[i];
        } else {
            for (std::size_t j = 0; j < m; ++j) acc += row[j] * v[j];
            y[i] = acc * inv_deg_[i];
        }
    }
    return y;
}

DenseMatrix NormalizedOperator::apply(const DenseMatrix& v) const {
    const std::size_t m = size();
    if (v.rows() != m)
        throw std::invalid_argument("NormalizedOperator::apply: row count mismatch");
    const std::size_t c = v.cols();
    DenseMatrix y(m, c);
    Vector row;
    for (std::size_t i = 0; i < m; ++i) {
        graph_->kernel_row(i, row);
        double* yrow = y.row_ptr(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double w = kind_ == NormKind::Symmetric
                                 ? row[j] * inv_sqrt_deg_[i] * inv_sqrt_deg_[j]
                                 : row[j] * inv_deg_[i];
            if (w == 0.0) continue;
            const double* vrow = v.row_ptr(j);
            for (std::size_t k = 0; k < c; ++k) yrow[k] += w * vrow[k];
        }
    }
    return y;
}

DenseMatrix NormalizedOperator::materialize() const {
    const std::size_t m = size();
    DenseMatrix a(m, m);
    Vector row;
    for (std::size_t i = 0; i < m; ++i) {
        graph_->kernel_row(i, row);
        double* arow = a.row_ptr(i);
        for (std::size_t j = 0; j < m; ++j) arow[j] = kind_ == NormKind::Symmetric
                ? row[j] * inv_sqrt_deg_[i] * inv_sqrt_deg_[j]
                : row[j] * inv_deg_[i];
    }
    return a;
}

Vector apply_operator(const NormalizedOperator& op, const Vector& v) { return op.apply(v); }

}  // namespace locspec
