#pragma once

#include <cstddef>
#include <vector>

#include "gribov/params.hpp"

namespace gribov {

// Element of the truncated Bargmann space in the orthonormal basis e_n = z^n/sqrt(n!).
// Stores the orthonormal coordinates c_n rather than monomial coefficients a_n = c_n/sqrt(n!):
// norms stay Euclidean and no factorial ever overflows in the core.
struct CoeffVector {
    std::vector<complex_t> coeffs;

    CoeffVector() = default;
    explicit CoeffVector(std::size_t trunc) : coeffs(trunc, complex_t(0.0)) {}
    explicit CoeffVector(std::vector<complex_t> c) : coeffs(std::move(c)) {}

    std::size_t trunc() const { return coeffs.size(); }
    complex_t& operator[](std::size_t n) { return coeffs[n]; }
    const complex_t& operator[](std::size_t n) const { return coeffs[n]; }

    // B0 is the subspace with no vacuum component.
    bool in_b0() const { return coeffs.empty() || coeffs[0] == complex_t(0.0); }

    static CoeffVector basis(std::size_t n, std::size_t trunc);
};

// <v,w> = sum_n c_n(v) conj(c_n(w)); linear in v, antilinear in w.
complex_t inner_product(const CoeffVector& v, const CoeffVector& w);
double bargmann_norm(const CoeffVector& v);

// phi(z) = sum c_n z^n/sqrt(n!), accumulated via the stable term recurrence
// z^n/sqrt(n!) = (z/sqrt(n)) * z^{n-1}/sqrt((n-1)!).
complex_t evaluate_at(const CoeffVector& v, complex_t z);

// Explicit conversions to/from monomial coefficients a_n. sqrt(n!) overflows
// near n = 600; the conversion reports that instead of emitting inf.
CoeffVector from_monomial(const std::vector<complex_t>& a);
std::vector<complex_t> to_monomial(const CoeffVector& v);

} // namespace gribov
