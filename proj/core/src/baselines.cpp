#include "locspec/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace locspec {

namespace {

BaselineRanking order_by_distance(const Vector& dist2, std::size_t r,
                                  BaselineMethod method) {
    BaselineRanking out;
    out.method = method;
    out.r = r;
    out.order.reserve(dist2.size() - 1);
    for (std::size_t i = 0; i < dist2.size(); ++i)
        if (i != r) out.order.push_back(i);
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) { return dist2[a] < dist2[b]; });
    return out;
}

}  // namespace

BaselineRanking nn_rank(const DenseMatrix& x, std::size_t r) {
    const std::size_t m = x.rows();
    if (m < 2) throw std::invalid_argument("nn_rank: need at least 2 points");
    if (r >= m) throw std::invalid_argument("nn_rank: r out of range");

    Vector dist2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < x.cols(); ++c) {
            const double d = x(i, c) - x(r, c);
            acc += d * d;
        }
        dist2[i] = acc;
    }
    return order_by_distance(dist2, r, BaselineMethod::NearestNeighbor);
}

BaselineRanking kernel_nn_rank(const KernelGraph& g, std::size_t r) {
    const std::size_t m = g.size();
    if (m < 2) throw std::invalid_argument("kernel_nn_rank: need at least 2 points");
    if (r >= m) throw std::invalid_argument("kernel_nn_rank: r out of range");

    Vector row;
    g.kernel_row(r, row);
    Vector dist2(m, 0.0);
    const double krr = g.kernel_entry(r, r);
    for (std::size_t i = 0; i < m; ++i)
        dist2[i] = krr - 2.0 * row[i] + g.kernel_entry(i, i);
    return order_by_distance(dist2, r, BaselineMethod::KernelNearestNeighbor);
}

std::size_t baseline_rank_of(const BaselineRanking& ranking, std::size_t target) {
    if (target == ranking.r)
        throw std::invalid_argument("baseline_rank_of: target equals the reference index");
    for (std::size_t pos = 0; pos < ranking.order.size(); ++pos)
        if (ranking.order[pos] == target) return pos + 1;
    throw std::invalid_argument("baseline_rank_of: target out of range");
}

}  // namespace locspec
