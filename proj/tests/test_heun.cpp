#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gribov/heun.hpp"

using namespace gribov;

namespace {

constexpr complex_t I{0.0, 1.0};

struct Jet {
    complex_t u, up, upp;
};

// Evaluate sum_n coeffs[n] x^{n+s} and its first two derivatives (ascending).
Jet eval_ascending(const std::vector<complex_t>& c, double s, complex_t x) {
    Jet j{0.0, 0.0, 0.0};
    for (std::size_t n = 0; n < c.size(); ++n) {
        const double e = static_cast<double>(n) + s;
        const complex_t p = std::pow(x, e);
        j.u += c[n] * p;
        j.up += c[n] * e * p / x;
        j.upp += c[n] * e * (e - 1.0) * p / (x * x);
    }
    return j;
}

// Evaluate sum_n coeffs[n] x^{s-n} and derivatives (descending).
Jet eval_descending(const std::vector<complex_t>& c, double s, complex_t x) {
    Jet j{0.0, 0.0, 0.0};
    for (std::size_t n = 0; n < c.size(); ++n) {
        const double e = s - static_cast<double>(n);
        const complex_t p = std::pow(x, e);
        j.u += c[n] * p;
        j.up += c[n] * e * p / x;
        j.upp += c[n] * e * (e - 1.0) * p / (x * x);
    }
    return j;
}

complex_t bhe_residual(const BheParams& p, const Jet& j, complex_t xi) {
    return xi * j.upp + (1.0 + p.alpha - p.beta * xi - 2.0 * xi * xi) * j.up +
           ((p.gamma - p.alpha - 2.0) * xi - 0.5 * (p.delta + (1.0 + p.alpha) * p.beta)) * j.u;
}

// Equation satisfied by g when u = e^{xi^2 + beta xi} g solves the BHE.
complex_t dominant_residual(const BheParams& p, const Jet& j, complex_t xi) {
    return xi * j.upp + (2.0 * xi * xi + p.beta * xi + 1.0 + p.alpha) * j.up +
           ((p.gamma + p.alpha + 2.0) * xi + 0.5 * ((1.0 + p.alpha) * p.beta - p.delta)) * j.u;
}

} // namespace

TEST_SUITE("heun") {

TEST_CASE("frobenius seeds and frozen low-order coefficients") {
    const GribovParams p{1.3, 0.7};
    const complex_t sigma{2.1, 0.3};
    const auto s = frobenius_coefficients(p, sigma, 6);
    CHECK(s.exponent == 1.0);
    const complex_t alpha = I * (sigma / p.lambda - p.rho());
    CHECK(std::abs(s.alpha_param - alpha) < 1e-15);
    CHECK(std::abs(s.coeffs[0] - 1.0) < 1e-15);
    CHECK(std::abs(s.coeffs[1] + 0.5 * alpha) < 1e-15);

    // mu = 1, lambda = 0.5, sigma = 1.3: rho = 2, sigma/lambda = 2.6.
    // By hand: a_1 = -0.3 i, a_2 = -29/300, a_3 = 407 i / 18000.
    const auto f = frobenius_coefficients(GribovParams{1.0, 0.5}, 1.3, 4);
    CHECK(std::abs(f.coeffs[1] - complex_t{0.0, -0.3}) < 1e-15);
    CHECK(std::abs(f.coeffs[2] - complex_t{-29.0 / 300.0, 0.0}) < 1e-15);
    CHECK(std::abs(f.coeffs[3] - complex_t{0.0, 407.0 / 18000.0}) < 1e-15);

    // mu = lambda = sigma = 1: a_1 = 0 and a_2 = -1/6.
    const auto g = frobenius_coefficients(GribovParams{1.0, 1.0}, 1.0, 3);
    CHECK(std::abs(g.coeffs[1]) < 1e-15);
    CHECK(std::abs(g.coeffs[2] + 1.0 / 6.0) < 1e-15);
}

TEST_CASE("real-axis coefficients are the phase-rotated complex ones") {
    const GribovParams p{0.8, 0.6};
    const double sigma = 1.9;
    const auto a = frobenius_coefficients(p, sigma, 15).coeffs;
    const auto b = frobenius_real_coefficients(p, sigma, 15);
    complex_t phase = 1.0;
    for (std::size_t n = 0; n < b.size(); ++n) {
        const complex_t expect = a[n] * phase; // (-i)^n a_n
        CHECK(std::abs(expect.imag()) < 1e-14 * (1.0 + std::abs(expect)));
        CHECK(std::abs(b[n] - expect.real()) < 1e-14 * (1.0 + std::abs(expect)));
        phase *= -I;
    }
}

TEST_CASE("gribov chart parameters") {
    const GribovParams p{1.0, 0.5};
    const complex_t sigma{2.3, 0.0};
    const auto b = bhe_from_gribov(p, sigma);
    const double rt2 = std::sqrt(2.0);
    CHECK(std::abs(b.alpha + 1.0) < 1e-15);
    CHECK(std::abs(b.beta + p.rho() * rt2) < 1e-14);
    CHECK(std::abs(b.gamma - 1.0) < 1e-15);
    CHECK(std::abs(b.delta - 2.0 * rt2 * sigma / p.lambda) < 1e-13);

    const GribovParams degenerate{1.0, 0.0};
    CHECK_THROWS_AS(bhe_from_gribov(degenerate, sigma), std::domain_error);
}

TEST_CASE("series at zero reproduces a closed-form exponential solution") {
    // With gamma = -alpha - 2 and delta = (1 + alpha) beta the analytic branch
    // is exactly e^{xi^2 + beta xi}.
    const double beta = 0.3;
    const BheParams p{0.5, beta, -2.5, 1.5 * beta};
    const auto s = bhe_series_at_zero(p, 10);
    REQUIRE(s.coeffs.size() == 11);
    for (std::size_t n = 0; n <= 10; ++n) {
        double taylor = 0.0;
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            const std::size_t m = n - 2 * k;
            double term = std::pow(beta, static_cast<double>(m));
            for (std::size_t j = 2; j <= k; ++j) term /= static_cast<double>(j);
            for (std::size_t j = 2; j <= m; ++j) term /= static_cast<double>(j);
            taylor += term;
        }
        CHECK(std::abs(s.coeffs[n] - taylor) < 1e-12 * (1.0 + std::abs(taylor)));
    }
}

TEST_CASE("series at zero: raw seeds, normalization, residual order") {
    const BheParams p{0.3, 0.7, 1.9, -1.1};
    const auto A = bhe_raw_coefficients(p, 6);
    CHECK(std::abs(A[0] - 1.0) < 1e-15);
    CHECK(std::abs(A[1] - 0.5 * (p.delta + p.beta * (1.0 + p.alpha))) < 1e-15);

    // The (1/2, 0, 2, 0) instance: A_1 = 0 and A_2 = 3/4.
    const auto B = bhe_raw_coefficients(BheParams{0.5, 0.0, 2.0, 0.0}, 2);
    CHECK(std::abs(B[1]) < 1e-15);
    CHECK(std::abs(B[2] - 0.75) < 1e-15);

    // c_n * prod_{j<=n}(alpha + j) * n! recovers A_n.
    const auto s = bhe_series_at_zero(p, 12);
    complex_t denom = 1.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        denom *= (p.alpha + static_cast<double>(n)) * static_cast<double>(n);
        CHECK(std::abs(s.coeffs[n] * denom - A[n]) < 1e-12 * (1.0 + std::abs(A[n])));
    }

    // Truncated-series residual shrinks like xi^M.
    const auto r = [&](double xi) {
        return std::abs(bhe_residual(p, eval_ascending(s.coeffs, 0.0, xi), xi));
    };
    CHECK(r(0.3) < 1e-6);
    const double slope = std::log(r(0.3) / r(0.15)) / std::log(2.0);
    CHECK(slope > 11.0);
}

TEST_CASE("logarithmic branches raise") {
    CHECK_THROWS_AS(bhe_series_at_zero(BheParams{-1.0, 0.5, 1.0, 2.0}, 4),
                    logarithmic_branch_error);
    CHECK_THROWS_AS(bhe_series_at_zero(BheParams{2.0, 0.5, 1.0, 2.0}, 4),
                    logarithmic_branch_error);
    CHECK_THROWS_AS(frobenius_coefficients(GribovParams{1.0, 0.5}, 1.0, 4, 0),
                    logarithmic_branch_error);
    CHECK_THROWS_AS(frobenius_coefficients(GribovParams{1.0, 0.0}, 1.0, 4),
                    std::invalid_argument);
}

TEST_CASE("thome seeds") {
    const BheParams p{0.3, 0.6, 1.7, 0.9};
    const auto [rec, dom] = thome_series_at_infinity(p, 4);
    CHECK(std::abs(rec.coeffs[0] - 1.0) < 1e-15);
    CHECK(std::abs(rec.coeffs[1] - 0.25 * (p.delta + p.beta * (p.gamma - 1.0))) < 1e-15);

    // beta = delta = 0: a_1 = 0 and a_2 = -((gamma-alpha-2)/2)((gamma+alpha-2)/2)/4.
    const BheParams q{0.3, 0.0, 1.7, 0.0};
    const auto [rec0, dom0] = thome_series_at_infinity(q, 2);
    CHECK(std::abs(rec0.coeffs[1]) < 1e-15);
    const complex_t expect2 =
        -0.25 * (0.5 * (q.gamma - q.alpha - 2.0)) * (0.5 * (q.gamma + q.alpha - 2.0));
    CHECK(std::abs(rec0.coeffs[2] - expect2) < 1e-15);
    (void)dom;
    (void)dom0;
}

TEST_CASE("thome recessive branch solves the equation asymptotically") {
    const BheParams p{0.3, 0.6, 1.7, 0.9};
    const auto [rec, dom] = thome_series_at_infinity(p, 8);
    (void)dom;
    CHECK(rec.exponent == doctest::Approx(0.5 * (1.7 - 0.3 - 2.0)).epsilon(1e-14));
    const auto r = [&](double xi) {
        return std::abs(bhe_residual(p, eval_descending(rec.coeffs, rec.exponent, xi), xi));
    };
    const double slope = std::log(r(10.0) / r(5.0)) / std::log(2.0);
    CHECK(slope < -6.5); // expect about exponent - M = -8.3
    CHECK(r(10.0) < 1e-6);
}

TEST_CASE("thome dominant branch solves the transformed equation") {
    const BheParams p{0.3, 0.6, 1.7, 0.9};
    const auto [rec, dom] = thome_series_at_infinity(p, 8);
    (void)rec;
    CHECK(dom.exponent == doctest::Approx(-0.5 * (1.7 + 0.3 + 2.0)).epsilon(1e-14));
    // Real equation: the dominant coefficients must come out real.
    for (const auto& b : dom.coeffs) CHECK(std::abs(b.imag()) < 1e-12 * (1.0 + std::abs(b)));
    const auto r = [&](double xi) {
        return std::abs(dominant_residual(p, eval_descending(dom.coeffs, dom.exponent, xi), xi));
    };
    const double slope = std::log(r(10.0) / r(5.0)) / std::log(2.0);
    CHECK(slope < -6.5);
    CHECK(r(10.0) < 1e-4);
}

TEST_CASE("gribov instance: exponents and axis asymptotics") {
    const GribovParams gp{1.0, 0.5};
    const double sigma = 2.3;
    const auto b = bhe_from_gribov(gp, sigma);
    const auto [rec, dom] = thome_series_at_infinity(b, 8);
    CHECK(rec.exponent == 0.0); // gamma - alpha - 2 = 0
    CHECK(dom.exponent == -1.0);

    // Real-axis expansion u ~ sum c_n y^{-n} obeys
    // (k+1) c_{k+1} + (rho k + sigma/lambda) c_k + k (k-1) c_{k-1} = 0;
    // the xi chart hits the axis at xi = -y/sqrt(2), so c_n = a_n (-sqrt 2)^n.
    const double rho = gp.rho();
    const double sl = sigma / gp.lambda;
    std::vector<double> c(9);
    c[0] = 1.0;
    for (std::size_t k = 0; k + 1 <= 8; ++k) {
        const double kk = static_cast<double>(k);
        double val = (rho * kk + sl) * c[k];
        if (k >= 1) val += kk * (kk - 1.0) * c[k - 1];
        c[k + 1] = -val / (kk + 1.0);
    }
    double chart = 1.0;
    for (std::size_t n = 0; n <= 8; ++n) {
        const complex_t mapped = rec.coeffs[n] * chart;
        CHECK(std::abs(mapped.imag()) < 1e-12 * (1.0 + std::abs(mapped)));
        CHECK(std::abs(mapped.real() - c[n]) < 1e-12 * (1.0 + std::abs(c[n])));
        chart *= -std::sqrt(2.0);
    }
}

TEST_CASE("series evaluation mechanics") {
    SeriesSolution exps;
    exps.exponent = 0.0;
    exps.coeffs.resize(20);
    double fact = 1.0;
    for (std::size_t n = 0; n < 20; ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        exps.coeffs[n] = 1.0 / fact;
    }
    CHECK(std::abs(evaluate_series(exps, 1.0) - std::exp(1.0)) < 1e-12);
    CHECK(std::abs(evaluate_series(exps, 0.0) - 1.0) < 1e-15);

    SeriesSolution lin;
    lin.exponent = 1.0;
    lin.coeffs = {1.0};
    CHECK(std::abs(evaluate_series(lin, 0.0)) < 1e-15);

    SeriesSolution geo;
    geo.exponent = 0.0;
    geo.coeffs.assign(31, 1.0);
    std::size_t used = 0;
    double err = -1.0;
    const complex_t val = evaluate_thome(geo, 2.0, &used, &err);
    CHECK(used == 31);
    CHECK(std::abs(val - 2.0) < 1e-8);
    CHECK(err < 1e-8);

    SeriesSolution divergent;
    divergent.exponent = 0.0;
    divergent.coeffs.resize(26);
    fact = 1.0;
    for (std::size_t n = 0; n < 26; ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        divergent.coeffs[n] = fact;
    }
    const complex_t dval = evaluate_thome(divergent, 10.0, &used, &err);
    CHECK(used == 10); // terms n!/10^n stop shrinking at n = 10
    CHECK(std::abs(err - 3628800.0 / 1e10) < 1e-12);
    CHECK(std::isfinite(dval.real()));

    CHECK_THROWS_AS(evaluate_thome(geo, complex_t{0.0, 0.0}, nullptr, nullptr),
                    std::domain_error);
    SeriesSolution neg;
    neg.exponent = -1.0;
    neg.coeffs = {1.0};
    CHECK_THROWS_AS(evaluate_series(neg, complex_t{0.0, 0.0}), std::domain_error);
}

} // TEST_SUITE
