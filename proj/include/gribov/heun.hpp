#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gribov/params.hpp"

namespace gribov {

// Requesting a series branch that carries a logarithm (no pure power series exists).
struct logarithmic_branch_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Truncated series solution attached to a singular point.
// Ascending form: x^exponent * sum_n coeffs[n] x^n.
// Descending (Thome) form: x^exponent * sum_n coeffs[n] x^{-n}, possibly under an
// exponential prefactor supplied by the caller context.
struct SeriesSolution {
    double exponent = 0.0;          // indicial root / asymptotic power
    complex_t alpha_param{0.0, 0.0}; // branch parameter recorded for reporting
    std::vector<complex_t> coeffs;   // coeffs[0] normalized to 1 unless noted

    std::size_t trunc() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// Bi-confluent Heun equation in normal form:
//   xi u'' + (1 + alpha - beta xi - 2 xi^2) u' + ((gamma - alpha - 2) xi - (delta + (1 + alpha) beta) / 2) u = 0.
struct BheParams {
    complex_t alpha{0.0, 0.0};
    complex_t beta{0.0, 0.0};
    complex_t gamma{0.0, 0.0};
    complex_t delta{0.0, 0.0};
};

// Gribov eigenvalue equation in the xi chart (z = i sqrt(2) xi):
// (alpha, beta, gamma, delta) = (-1, -rho sqrt(2), 1, 2 sqrt(2) sigma / lambda).
BheParams bhe_from_gribov(const GribovParams& p, complex_t sigma);

// Analytic branch at z = 0 of phi'' + (z - i rho) phi' + (i sigma / (lambda z)) phi = 0,
// indicial root s = 1: phi(z) = z sum_n a_n z^n with a_0 = 1 and
//   n (n + 1) a_n + i (sigma / lambda - n rho) a_{n-1} + (n - 1) a_{n-2} = 0.
// branch = 0 asks for the logarithmic companion root and throws.
SeriesSolution frobenius_coefficients(const GribovParams& p, complex_t sigma,
                                      std::size_t n_terms, int branch = 1);

// Real-axis restriction of the s = 1 branch: u(y) = y sum_n b_n y^n with
// b_n = a_n (-i)^n real, so u(y) = i phi(-i y) for real sigma.
std::vector<double> frobenius_real_coefficients(const GribovParams& p, double sigma,
                                                std::size_t n_terms);

// Generic ascending solution at xi = 0, normalized to u(0) = 1:
//   c_{m+1} = ( (beta m + (delta + (1 + alpha) beta) / 2) c_m
//               + (2 (m - 1) - (gamma - alpha - 2)) c_{m-1} ) / ((m + 1) (m + 1 + alpha)).
// Integer alpha is the logarithmic case and throws.
SeriesSolution bhe_series_at_zero(const BheParams& p, std::size_t n_terms);

// Raw coefficients A_n of the classical normalization, related by
// c_n = A_n / (prod_{j=1..n} (alpha + j) * n!):
//   A_{n+2} = (beta (n + 1) + (delta + beta (1 + alpha)) / 2) A_{n+1}
//             - (gamma - 2 - alpha - 2 n) (n + 1) (n + 1 + alpha) A_n,
//   A_0 = 1, A_1 = (delta + beta (1 + alpha)) / 2.
std::vector<complex_t> bhe_raw_coefficients(const BheParams& p, std::size_t n_terms);

// Formal solutions at xi = infinity. first: recessive branch
//   xi^{(gamma - alpha - 2)/2} sum_n a_n xi^{-n},
// second: dominant branch
//   e^{xi^2 + beta xi} xi^{-(gamma + alpha + 2)/2} sum_n b_n xi^{-n}
// (the exponential prefactor is NOT folded into the returned coefficients).
// Coefficient recurrence of the recessive branch:
//   2 (n + 2) a_{n+2} = ((delta + beta (gamma - 1)) / 2 - beta (n + 1)) a_{n+1}
//                       - ((gamma - alpha - 2)/2 - n) ((gamma + alpha - 2)/2 - n) a_n,
//   a_0 = 1, a_1 = (delta + beta (gamma - 1)) / 4;
// the dominant coefficients are b_n = a_n(alpha, i beta, -gamma, -i delta) * i^{-n}.
std::pair<SeriesSolution, SeriesSolution> thome_series_at_infinity(const BheParams& p,
                                                                   std::size_t n_terms);

// Evaluate an ascending series: x^exponent * sum coeffs[n] x^n.
complex_t evaluate_series(const SeriesSolution& s, complex_t x);

// Evaluate a descending series with optimal truncation (stop before the smallest
// term); the first omitted term is reported as the error estimate. Exponential
// prefactors of dominant branches are not included.
complex_t evaluate_thome(const SeriesSolution& s, complex_t xi,
                         std::size_t* terms_used = nullptr, double* err_estimate = nullptr);

} // namespace gribov
