#pragma once

#include <cstdint>
#include <optional>

#include "locspec/matrix.hpp"

namespace locspec {

enum class KernelMode { Dense, MatrixFree };

/// Gaussian kernel parameters. An unset bandwidth means the median
/// heuristic: epsilon = median of the squared pairwise distances
/// (exact for m <= 2000, otherwise estimated from 2000 seeded sampled
/// pairs).
struct KernelConfig {
    std::optional<double> bandwidth;  // explicit epsilon; empty -> median heuristic
    KernelMode mode = KernelMode::Dense;
};

/// Gaussian kernel graph over a data matrix: k(x_i, x_j) =
/// exp(-||x_i - x_j||^2 / epsilon). Dense mode materializes K;
/// matrix-free mode keeps only X and the degree vector and computes
/// kernel rows on demand.
class KernelGraph {
public:
    std::size_t size() const { return m_; }
    KernelMode mode() const { return mode_; }
    double epsilon() const { return epsilon_; }

    const DenseMatrix& kernel() const;       // dense mode only
    const Vector& degrees() const { return degrees_; }
    const DenseMatrix& data() const { return x_; }

    double kernel_entry(std::size_t i, std::size_t j) const;
    void kernel_row(std::size_t i, Vector& out) const;

    friend KernelGraph build_gaussian_kernel(const DenseMatrix& x, const KernelConfig& config);

    /// Wrap an explicit symmetric kernel matrix (custom kernels,
    /// tests). Entries must be finite and symmetric; degrees are
    /// computed here and may be zero, which the normalizations reject.
    static KernelGraph from_dense_kernel(DenseMatrix k);

private:
    std::size_t m_ = 0;
    KernelMode mode_ = KernelMode::Dense;
    double epsilon_ = 0.0;
    DenseMatrix k_;        // dense mode
    DenseMatrix x_;        // matrix-free mode (and kernel_entry in either mode)
    Vector degrees_;
};

KernelGraph build_gaussian_kernel(const DenseMatrix& x, const KernelConfig& config);

/// Row sums of K; recomputed from the graph.
Vector degrees(const KernelGraph& g);

enum class NormKind { Symmetric, RowStochastic };

/// View of a KernelGraph as either A = D^{-1/2} K D^{-1/2} (symmetric)
/// or P = D^{-1} K (row-stochastic). Holds a pointer to the graph; the
/// graph must outlive the operator.
class NormalizedOperator {
public:
    NormalizedOperator(const KernelGraph& g, NormKind kind);

    std::size_t size() const { return graph_->size(); }
    NormKind kind() const { return kind_; }
    const KernelGraph& graph() const { return *graph_; }

    Vector apply(const Vector& v) const;

    /// Block apply, one kernel-row pass for all columns.
    DenseMatrix apply(const DenseMatrix& v) const;

    /// Materialize the operator (any mode; caller is responsible for
    /// the m x m memory).
    DenseMatrix materialize() const;

    double entry(std::size_t i, std::size_t j) const;

private:
    const KernelGraph* graph_;
    NormKind kind_;
    Vector inv_sqrt_deg_;  // symmetric kind
    Vector inv_deg_;       // row-stochastic kind
};

NormalizedOperator normalize_symmetric(const KernelGraph& g);
NormalizedOperator normalize_row_stochastic(const KernelGraph& g);

// the operator aliases the graph; temporaries would dangle
NormalizedOperator normalize_symmetric(KernelGraph&&) = delete;
NormalizedOperator normalize_row_stochastic(KernelGraph&&) = delete;

Vector apply_operator(const NormalizedOperator& op, const Vector& v);

/// Median of squared pairwise distances, exact enumeration. Exposed
/// for tests.
double median_squared_distance_exact(const DenseMatrix& x);

}  // namespace locspec
