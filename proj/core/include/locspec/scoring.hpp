#pragma once

#include "locspec/matrix.hpp"
#include "locspec/solver.hpp"

namespace locspec {

enum class ScoreMode { Magnitude, Signed };

/// Eigenvector coordinates most significant to the reference point:
/// the k indices with the largest |u_{r,j}|, descending. u_r_local
/// always holds the magnitudes, in both modes.
struct LocalizedSelection {
    std::size_t r = 0;
    std::vector<std::size_t> perm;  // k distinct eigenvector indices
    std::size_t k = 0;
    ScoreMode mode = ScoreMode::Magnitude;
    Vector u_r_local;  // |u_{r,j_1}| >= ... >= |u_{r,j_k}|, norm > 0
};

struct ScoreVector {
    Vector s;  // nonnegative similarity magnitudes, length m
    std::size_t r = 0;
};

/// Point indices sorted by score descending, reference excluded, ties
/// broken toward the lower index.
struct Ranking {
    std::vector<std::size_t> order;
    std::size_t r = 0;
};

/// Ties in |u_{rj}| break toward the larger eigenvalue (lower column
/// index).
LocalizedSelection select_top_coordinates(const EigenBasis& basis, std::size_t r,
                                          std::size_t k,
                                          ScoreMode mode = ScoreMode::Magnitude);

/// T_k: column c is U(:, j_c), entrywise absolute value in magnitude
/// mode.
DenseMatrix build_localized_embedding(const EigenBasis& basis,
                                      const LocalizedSelection& sel);

/// |T_k . u_r_local / ||u_r_local|||, per point.
ScoreVector score(const DenseMatrix& t_k, const LocalizedSelection& sel);

Ranking rank(const ScoreVector& scores);

/// 1-based position of target in the ranking (1 = most similar).
std::size_t rank_of(const Ranking& ranking, std::size_t target);

/// Convenience wrapper: selection, embedding, score in one call.
ScoreVector localized_scores(const EigenBasis& basis, std::size_t r, std::size_t k,
                             ScoreMode mode = ScoreMode::Magnitude);

}  // namespace locspec
