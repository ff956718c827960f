#include "gribov/heun.hpp"

#include <cmath>
#include <complex>

namespace gribov {

namespace {

constexpr complex_t I{0.0, 1.0};

bool near_integer(complex_t z, double tol = 1e-12) {
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

// Shared recurrence for the recessive Thome coefficients of a BHE instance.
std::vector<complex_t> thome_recessive_coeffs(const BheParams& p, std::size_t n_terms) {
    const complex_t g1 = 0.5 * (p.gamma - p.alpha - 2.0);
    const complex_t g2 = 0.5 * (p.gamma + p.alpha - 2.0);
    const complex_t seed = 0.5 * (p.delta + p.beta * (p.gamma - 1.0));
    std::vector<complex_t> a(n_terms + 1);
    a[0] = 1.0;
    for (std::size_t k = 1; k <= n_terms; ++k) {
        const double kk = static_cast<double>(k);
        complex_t val = (seed - p.beta * (kk - 1.0)) * a[k - 1];
        if (k >= 2) val -= (g1 - (kk - 2.0)) * (g2 - (kk - 2.0)) * a[k - 2];
        a[k] = val / (2.0 * kk);
    }
    return a;
}

double real_exponent(complex_t s, const char* what) {
    if (std::abs(s.imag()) > 1e-12)
        throw std::domain_error(std::string(what) + ": complex asymptotic exponent unsupported");
    return s.real();
}

} // namespace

BheParams bhe_from_gribov(const GribovParams& p, complex_t sigma) {
    const double rho = p.rho(); // throws when lambda == 0
    const double rt2 = std::sqrt(2.0);
    return BheParams{-1.0, -rho * rt2, 1.0, 2.0 * rt2 * sigma / p.lambda};
}

SeriesSolution frobenius_coefficients(const GribovParams& p, complex_t sigma,
                                      std::size_t n_terms, int branch) {
    if (p.lambda == 0.0)
        throw std::invalid_argument("frobenius series requires lambda != 0");
    if (branch != 1)
        throw logarithmic_branch_error(
            "indicial root s = 0 carries a logarithm; only the s = 1 branch is a power series");
    const double rho = p.rho();
    const complex_t sig_l = sigma / p.lambda;

    SeriesSolution out;
    out.exponent = 1.0;
    out.alpha_param = I * (sig_l - rho);
    out.coeffs.resize(n_terms + 1);
    out.coeffs[0] = 1.0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const double nn = static_cast<double>(n);
        complex_t val = I * (sig_l - nn * rho) * out.coeffs[n - 1];
        if (n >= 2) val += (nn - 1.0) * out.coeffs[n - 2];
        out.coeffs[n] = -val / (nn * (nn + 1.0));
    }
    return out;
}

std::vector<double> frobenius_real_coefficients(const GribovParams& p, double sigma,
                                                std::size_t n_terms) {
    if (p.lambda == 0.0)
        throw std::invalid_argument("frobenius series requires lambda != 0");
    const double rho = p.rho();
    const double sig_l = sigma / p.lambda;
    std::vector<double> b(n_terms + 1);
    b[0] = 1.0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const double nn = static_cast<double>(n);
        double val = (sig_l - nn * rho) * b[n - 1];
        if (n >= 2) val -= (nn - 1.0) * b[n - 2];
        b[n] = -val / (nn * (nn + 1.0));
    }
    return b;
}

SeriesSolution bhe_series_at_zero(const BheParams& p, std::size_t n_terms) {
    if (near_integer(p.alpha))
        throw logarithmic_branch_error(
            "integer alpha is the logarithmic case; no generic power-series pair at xi = 0");
    const complex_t seed = 0.5 * (p.delta + (1.0 + p.alpha) * p.beta);
    SeriesSolution out;
    out.exponent = 0.0;
    out.alpha_param = p.alpha;
    out.coeffs.resize(n_terms + 1);
    out.coeffs[0] = 1.0;
    for (std::size_t m1 = 1; m1 <= n_terms; ++m1) {
        const double m = static_cast<double>(m1) - 1.0;
        complex_t val = (p.beta * m + seed) * out.coeffs[m1 - 1];
        if (m1 >= 2) val += (2.0 * (m - 1.0) - (p.gamma - p.alpha - 2.0)) * out.coeffs[m1 - 2];
        out.coeffs[m1] = val / ((m + 1.0) * (m + 1.0 + p.alpha));
    }
    return out;
}

std::vector<complex_t> bhe_raw_coefficients(const BheParams& p, std::size_t n_terms) {
    std::vector<complex_t> A(n_terms + 1);
    A[0] = 1.0;
    if (n_terms >= 1) A[1] = 0.5 * (p.delta + p.beta * (1.0 + p.alpha));
    for (std::size_t k = 2; k <= n_terms; ++k) {
        const double n = static_cast<double>(k) - 2.0;
        A[k] = (p.beta * (n + 1.0) + 0.5 * (p.delta + p.beta * (1.0 + p.alpha))) * A[k - 1] -
               (p.gamma - 2.0 - p.alpha - 2.0 * n) * (n + 1.0) * (n + 1.0 + p.alpha) * A[k - 2];
    }
    return A;
}

std::pair<SeriesSolution, SeriesSolution> thome_series_at_infinity(const BheParams& p,
                                                                   std::size_t n_terms) {
    SeriesSolution rec;
    rec.exponent = real_exponent(0.5 * (p.gamma - p.alpha - 2.0), "recessive branch");
    rec.alpha_param = p.alpha;
    rec.coeffs = thome_recessive_coeffs(p, n_terms);

    // Dominant branch via u = e^{xi^2 + beta xi} v(i xi): v solves the BHE with
    // parameters (alpha, i beta, -gamma, -i delta), so b_n = a_n' * i^{-n}.
    const BheParams flipped{p.alpha, I * p.beta, -p.gamma, -I * p.delta};
    SeriesSolution dom;
    dom.exponent = real_exponent(-0.5 * (p.gamma + p.alpha + 2.0), "dominant branch");
    dom.alpha_param = p.alpha;
    dom.coeffs = thome_recessive_coeffs(flipped, n_terms);
    complex_t phase = 1.0;
    for (std::size_t n = 0; n <= n_terms; ++n) {
        dom.coeffs[n] *= phase;
        phase *= -I; // i^{-n}
    }
    return {rec, dom};
}

complex_t evaluate_series(const SeriesSolution& s, complex_t x) {
    if (s.coeffs.empty()) return 0.0;
    complex_t acc = s.coeffs.back();
    for (std::size_t n = s.coeffs.size() - 1; n-- > 0;) acc = s.coeffs[n] + x * acc;
    if (x == complex_t{0.0, 0.0}) {
        if (s.exponent == 0.0) return s.coeffs[0];
        if (s.exponent > 0.0) return 0.0;
        throw std::domain_error("series with negative exponent evaluated at 0");
    }
    return std::pow(x, s.exponent) * acc;
}

complex_t evaluate_thome(const SeriesSolution& s, complex_t xi,
                         std::size_t* terms_used, double* err_estimate) {
    if (xi == complex_t{0.0, 0.0})
        throw std::domain_error("descending series evaluated at 0");
    const complex_t w = 1.0 / xi;
    complex_t acc = 0.0;
    complex_t power = 1.0;
    double prev_mag = -1.0;
    std::size_t used = 0;
    double err = 0.0;
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
        const complex_t term = s.coeffs[n] * power;
        const double mag = std::abs(term);
        if (n > 0 && mag >= prev_mag) { // terms started growing: optimal truncation point
            err = mag;
            break;
        }
        acc += term;
        prev_mag = mag;
        err = mag; // bound proxy when the tail is exhausted while still decreasing
        ++used;
        power *= w;
    }
    if (terms_used) *terms_used = used;
    if (err_estimate) *err_estimate = err;
    return std::pow(xi, s.exponent) * acc;
}

} // namespace gribov
