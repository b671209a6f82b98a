#include "locspec/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace locspec {

LocalizedSelection select_top_coordinates(const EigenBasis& basis, std::size_t r,
                                          std::size_t k, ScoreMode mode) {
    const std::size_t m = basis.vectors.rows();
    const std::size_t l = basis.vectors.cols();
    if (r >= m) throw std::invalid_argument("select_top_coordinates: r out of range");
    if (k < 1 || k > l)
        throw std::invalid_argument("select_top_coordinates: need 1 <= k <= l");

    std::vector<std::size_t> idx(l);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(basis.vectors(r, a)) > std::abs(basis.vectors(r, b));
    });

    LocalizedSelection sel;
    sel.r = r;
    sel.k = k;
    sel.mode = mode;
    sel.perm.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    sel.u_r_local.resize(k);
    for (std::size_t c = 0; c < k; ++c)
        sel.u_r_local[c] = std::abs(basis.vectors(r, sel.perm[c]));
    if (norm2(sel.u_r_local) == 0.0)
        throw std::invalid_argument(
            "select_top_coordinates: reference row of U is identically zero");
    return sel;
}

DenseMatrix build_localized_embedding(const EigenBasis& basis,
                                      const LocalizedSelection& sel) {
    const std::size_t m = basis.vectors.rows();
    const std::size_t l = basis.vectors.cols();
    for (std::size_t j : sel.perm)
        if (j >= l)
            throw std::invalid_argument("build_localized_embedding: selection out of range");

    DenseMatrix t(m, sel.k);
    for (std::size_t c = 0; c < sel.k; ++c) {
        const std::size_t j = sel.perm[c];
        for (std::size_t i = 0; i < m; ++i) {
            const double v = basis.vectors(i, j);
            t(i, c) = sel.mode == ScoreMode::Magnitude ? std::abs(v) : v;
        }
    }
    return t;
}

ScoreVector score(const DenseMatrix& t_k, const LocalizedSelection& sel) {
    if (t_k.cols() != sel.k) throw std::invalid_argument("score: embedding width != k");
    const double nrm = norm2(sel.u_r_local);
    if (nrm == 0.0) throw std::invalid_argument("score: zero reference norm");

    ScoreVector out;
    out.r = sel.r;
    out.s.resize(t_k.rows());
    for (std::size_t i = 0; i < t_k.rows(); ++i) {
        double acc = 0.0;
        const double* row = t_k.row_ptr(i);
        for (std::size_t c = 0; c < sel.k; ++c) acc += row[c] * (sel.u_r_local[c] / nrm);
        out.s[i] = std::abs(acc);
    }
    return out;
}

Ranking rank(const ScoreVector& scores) {
    const std::size_t m = scores.s.size();
    if (m < 2) throw std::invalid_argument("rank: need at least 2 points");
    Ranking out;
    out.r = scores.r;
    out.order.reserve(m - 1);
    for (std::size_t i = 0; i < m; ++i)
        if (i != scores.r) out.order.push_back(i);
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) { return scores.s[a] > scores.s[b]; });
    return out;
}

std::size_t rank_of(const Ranking& ranking, std::size_t target) {
    if (target == ranking.r)
        throw std::invalid_argument("rank_of: target equals the reference index");
    for (std::size_t pos = 0; pos < ranking.order.size(); ++pos)
        if (ranking.order[pos] == target) return pos + 1;
    throw std::invalid_argument("rank_of: target out of range");
}

ScoreVector localized_scores(const EigenBasis& basis, std::size_t r, std::size_t k,
                             ScoreMode mode) {
    const LocalizedSelection sel = select_top_coordinates(basis, r, k, mode);
    const DenseMatrix t_k = build_localized_embedding(basis, sel);
    return score(t_k, sel);
}

}  // namespace locspec
