#include "gribov/coeff_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace gribov {

CoeffVector CoeffVector::basis(std::size_t n, std::size_t trunc) {
    if (n >= trunc) throw std::invalid_argument("basis index outside truncation");
    CoeffVector v(trunc);
    v[n] = 1.0;
    return v;
}

static void check_same_trunc(const CoeffVector& v, const CoeffVector& w) {
    if (v.trunc() != w.trunc()) throw std::invalid_argument("truncation mismatch");
}

complex_t inner_product(const CoeffVector& v, const CoeffVector& w) {
    check_same_trunc(v, w);
    complex_t acc = 0.0;
    for (std::size_t n = 0; n < v.trunc(); ++n) acc += v[n] * std::conj(w[n]);
    return acc;
}

double bargmann_norm(const CoeffVector& v) {
    double acc = 0.0;
    for (const auto& c : v.coeffs) acc += std::norm(c);
    return std::sqrt(acc);
}

complex_t evaluate_at(const CoeffVector& v, complex_t z) {
    complex_t term = 1.0;
    complex_t acc = 0.0;
    for (std::size_t n = 0; n < v.trunc(); ++n) {
        if (n > 0) term *= z / std::sqrt(static_cast<double>(n));
        acc += v[n] * term;
    }
    return acc;
}

CoeffVector from_monomial(const std::vector<complex_t>& a) {
    CoeffVector v(a.size());
    double root_fact = 1.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (n > 0) root_fact *= std::sqrt(static_cast<double>(n));
        if (!std::isfinite(root_fact))
            throw std::overflow_error("sqrt(n!) overflow in monomial conversion");
        v[n] = a[n] * root_fact;
    }
    return v;
}

std::vector<complex_t> to_monomial(const CoeffVector& v) {
    std::vector<complex_t> a(v.trunc());
    double root_fact = 1.0;
    for (std::size_t n = 0; n < v.trunc(); ++n) {
        if (n > 0) root_fact *= std::sqrt(static_cast<double>(n));
        if (!std::isfinite(root_fact))
            throw std::overflow_error("sqrt(n!) overflow in monomial conversion");
        a[n] = v[n] / root_fact;
    }
    return a;
}

} // namespace gribov
