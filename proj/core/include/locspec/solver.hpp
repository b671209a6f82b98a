#pragma once

#include <cstdint>

#include "locspec/kernel.hpp"
#include "locspec/matrix.hpp"

namespace locspec {

enum class SolverMethod { Dense, Randomized, Auto };

struct SolverConfig {
    std::size_t l = 15;           // eigenpairs to return
    std::size_t oversample = 10;  // sketch width is l + oversample
    std::size_t power_iters = 10;
    std::uint64_t seed = 0;
    SolverMethod method = SolverMethod::Auto;  // Auto -> dense iff m <= 2000
};

/// Top-l eigenpairs of a normalized kernel operator. values descending,
/// vectors m x l with orthonormal columns, residual = max_j
/// ||A u_j - lambda_j u_j||_2.
struct EigenBasis {
    Vector values;
    DenseMatrix vectors;
    double residual = 0.0;
};

/// Full dense eigendecomposition (l = m). Guard: m <= 10000.
EigenBasis evd_dense_full(const NormalizedOperator& op);

/// Randomized subspace iteration: Gaussian sketch of width l+p, q
/// power steps with QR re-orthonormalization, Rayleigh-Ritz on the
/// projected operator, truncation to l pairs.
EigenBasis evd_randomized(const NormalizedOperator& op, const SolverConfig& cfg);

/// Method dispatch; dense results are truncated to cfg.l columns.
EigenBasis solve(const NormalizedOperator& op, const SolverConfig& cfg);

double residual_check(const NormalizedOperator& op, const EigenBasis& basis);

/// Scale column j of the basis by its eigenvalue (U <- U Sigma);
/// optional pre-step before localized selection.
EigenBasis weight_by_eigenvalues(const EigenBasis& basis);

}  // namespace locspec
