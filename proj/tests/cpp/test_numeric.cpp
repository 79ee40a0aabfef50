#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "coulombgap/errors.hpp"
#include "coulombgap/numeric.hpp"

using namespace coulombgap;

TEST_CASE("find_root locates sqrt(2) by bisection + secant polish") {
    const double r =
        find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0);
    CHECK(std::fabs(r - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("find_root uses the supplied derivative for Newton polish") {
    const double r = find_root([](double x) { return std::cos(x); }, 1.0, 2.0,
                               1e-4, 1e-14,
                               [](double x) { return -std::sin(x); });
    CHECK(std::fabs(r - std::acos(-1.0) / 2.0) < 1e-13);
}

TEST_CASE("find_root throws without a sign change") {
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, 0.0, 1.0),
                    RootNotFound);
}

TEST_CASE("integrate: smooth integrands to near machine precision") {
    CHECK(std::fabs(integrate([](double x) { return x * x; }, 0.0, 1.0).value -
                    1.0 / 3.0) < 1e-14);
    CHECK(std::fabs(
              integrate([](double x) { return std::sin(x); }, 0.0,
                        std::acos(-1.0))
                  .value -
              2.0) < 1e-13);
    // Gaussian tail: 2/sqrt(pi) int_1^8 e^{-s^2} = erfc(1) up to < 1e-28.
    const double tail =
        2.0 / std::sqrt(std::acos(-1.0)) *
        integrate([](double s) { return std::exp(-s * s); }, 1.0, 8.0).value;
    CHECK(std::fabs(tail - 0.15729920705028513) < 1e-14);
}

TEST_CASE("integrate reports failure on hopeless tolerance budgets") {
    CHECK_THROWS_AS(integrate([](double x) { return std::cos(1.0 / x); }, 1e-8,
                              1.0, 1e-14, 0.0, 8),
                    QuadratureFailure);
}

TEST_CASE("gauss_legendre integrates degree 2n-1 exactly") {
    std::vector<double> nodes, weights;
    gauss_legendre(5, nodes, weights);
    REQUIRE(nodes.size() == 5);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += weights[i] * std::pow(nodes[i], 8);
    CHECK(std::fabs(s - 2.0 / 9.0) < 1e-14);  // int_{-1}^{1} x^8 = 2/9
    double w = 0.0;
    for (double wi : weights) w += wi;
    CHECK(std::fabs(w - 2.0) < 1e-14);
}

TEST_CASE("LogSumExp matches direct summation and survives huge terms") {
    LogSumExp acc;
    CHECK(acc.empty());
    for (double t : {-1.0, 0.5, 2.0})
        acc.add(t);
    const double direct =
        std::log(std::exp(-1.0) + std::exp(0.5) + std::exp(2.0));
    CHECK(std::fabs(acc.log_sum() - direct) < 1e-14);

    LogSumExp big;
    big.add(1000.0);
    big.add(1000.0 + std::log(2.0));
    CHECK(std::fabs(big.log_sum() - (1000.0 + std::log(3.0))) < 1e-12);

    LogSumExp none;
    CHECK(std::isinf(none.log_sum()));
}

TEST_CASE("parallel_for visits every index exactly once") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (auto& h : hits) CHECK(h.load() == 1);
}
