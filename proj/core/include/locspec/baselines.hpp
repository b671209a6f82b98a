#pragma once

#include "locspec/kernel.hpp"
#include "locspec/matrix.hpp"

namespace locspec {

enum class BaselineMethod { NearestNeighbor, KernelNearestNeighbor };

/// Indices sorted by (kernel-)distance to the reference, ascending,
/// reference excluded, ties toward the lower index.
struct BaselineRanking {
    BaselineMethod method;
    std::vector<std::size_t> order;
    std::size_t r = 0;
};

/// Euclidean nearest-neighbor ordering.
BaselineRanking nn_rank(const DenseMatrix& x, std::size_t r);

/// Kernel feature-space distance d^2(i) = K_rr - 2 K_ri + K_ii. For a
/// Gaussian kernel this is 2 - 2 K_ri and orders identically to
/// nn_rank.
BaselineRanking kernel_nn_rank(const KernelGraph& g, std::size_t r);

std::size_t baseline_rank_of(const BaselineRanking& ranking, std::size_t target);

}  // namespace locspec
