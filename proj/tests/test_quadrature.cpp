#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gribov/quadrature.hpp"

using namespace gribov;

TEST_SUITE("quadrature") {

TEST_CASE("adaptive integral of exp over [0,1]") {
    double err = -1.0;
    const double val = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0,
                                          1e-13, &err);
    CHECK(std::abs(val - (std::exp(1.0) - 1.0)) < 1e-13);
    CHECK(err >= 0.0);
    CHECK(err < 1e-10);
}

TEST_CASE("adaptive integral resolves a narrow gaussian peak") {
    const double a = 50.0;
    const double val = integrate_adaptive(
        [a](double x) { return std::exp(-a * (x - 1.0) * (x - 1.0)); }, 0.0, 10.0, 1e-12);
    const double exact =
        0.5 * std::sqrt(M_PI / a) * (std::erf(std::sqrt(a) * 9.0) + std::erf(std::sqrt(a)));
    CHECK(std::abs(val - exact) < 1e-12 * exact + 1e-15);
}

TEST_CASE("composite gauss-legendre rule structure") {
    const auto rule = composite_gauss_legendre(0.0, M_PI, 4);
    REQUIRE(rule.nodes.size() == 4 * 32);
    REQUIRE(rule.weights.size() == rule.nodes.size());
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    for (double w : rule.weights) CHECK(w > 0.0);
    CHECK(rule.nodes.front() > 0.0);
    CHECK(rule.nodes.back() < M_PI);
    const double wsum = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    CHECK(std::abs(wsum - M_PI) < 1e-13);

    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        integral += rule.weights[i] * std::sin(rule.nodes[i]);
    CHECK(std::abs(integral - 2.0) < 1e-14);
}

TEST_CASE("composite rule rejects empty or inverted ranges") {
    CHECK_THROWS_AS(composite_gauss_legendre(0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(composite_gauss_legendre(1.0, 1.0, 2), std::invalid_argument);
}

} // TEST_SUITE
