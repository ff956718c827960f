#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gribov {

// Adaptive Gauss-Kronrod (15 point) integral of f over [a, b].
// Splits until the relative error estimate drops below rel_tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double* err_estimate = nullptr);

// Fixed composite rule: nodes and weights ready for Nystrom assembly.
struct QuadratureRule {
    std::vector<double> nodes;   // ascending
    std::vector<double> weights; // positive, sum to b - a
};

// `panels` equal panels on [a, b], 32 Gauss-Legendre nodes per panel.
QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels);

} // namespace gribov
