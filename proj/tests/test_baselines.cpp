#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "locspec/baselines.hpp"
#include "locspec/kernel.hpp"
#include "test_helpers.hpp"

using namespace locspec;

TEST_CASE("nn_rank on a line") {
    DenseMatrix x(3, 1);
    x(1, 0) = 1.0;
    x(2, 0) = 3.0;
    const BaselineRanking rk = nn_rank(x, 0);
    CHECK(rk.order == std::vector<std::size_t>{1, 2});
    CHECK(baseline_rank_of(rk, 2) == 2);
}

TEST_CASE("nn_rank puts a duplicate of the reference first") {
    DenseMatrix x(4, 2);
    x(1, 0) = 5.0;
    x(2, 0) = 0.0;  // duplicate of row 0
    x(3, 1) = 2.0;
    const BaselineRanking rk = nn_rank(x, 0);
    CHECK(rk.order[0] == 2);
}

TEST_CASE("nn_rank matches a direct distance sort") {
    const DenseMatrix x = helpers::random_matrix(100, 4, 500);
    const std::size_t r = 17;
    const BaselineRanking rk = nn_rank(x, r);

    std::vector<std::size_t> ref;
    for (std::size_t i = 0; i < 100; ++i)
        if (i != r) ref.push_back(i);
    const auto d2 = [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < 4; ++c)
            acc += (x(i, c) - x(r, c)) * (x(i, c) - x(r, c));
        return acc;
    };
    std::stable_sort(ref.begin(), ref.end(),
                     [&](std::size_t a, std::size_t b) { return d2(a) < d2(b); });
    CHECK(rk.order == ref);
}

TEST_CASE("kernel_nn_rank on an explicit kernel row") {
    DenseMatrix k(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i) k(i, i) = 1.0;
    k(0, 1) = k(1, 0) = 0.9;
    k(0, 2) = k(2, 0) = 0.2;
    k(1, 2) = k(2, 1) = 0.5;
    const KernelGraph g = KernelGraph::from_dense_kernel(std::move(k));
    const BaselineRanking rk = kernel_nn_rank(g, 0);
    CHECK(rk.order == std::vector<std::size_t>{1, 2});
}

TEST_CASE("identical points have kernel distance zero and rank first") {
    DenseMatrix x(3, 2);
    x(1, 0) = 4.0;  // row 2 duplicates row 0
    KernelConfig cfg;
    cfg.bandwidth = 2.0;
    const KernelGraph g = build_gaussian_kernel(x, cfg);
    const BaselineRanking rk = kernel_nn_rank(g, 0);
    CHECK(rk.order[0] == 2);
}

TEST_CASE("Gaussian kernel-NN ordering equals NN ordering exactly") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const DenseMatrix x = helpers::random_matrix(100, 3, seed);
        KernelConfig cfg;
        cfg.bandwidth = 3.0;
        const KernelGraph g = build_gaussian_kernel(x, cfg);
        const BaselineRanking nn = nn_rank(x, 9);
        const BaselineRanking knn = kernel_nn_rank(g, 9);
        CHECK(nn.order == knn.order);
    }
}

TEST_CASE("baseline validation errors") {
    DenseMatrix x(3, 1);
    x(1, 0) = 1.0;
    CHECK_THROWS_AS(nn_rank(x, 7), std::invalid_argument);
    CHECK_THROWS_AS(nn_rank(DenseMatrix(1, 1), 0), std::invalid_argument);
    const BaselineRanking rk = nn_rank(x, 0);
    CHECK_THROWS_AS(baseline_rank_of(rk, 0), std::invalid_argument);
}
