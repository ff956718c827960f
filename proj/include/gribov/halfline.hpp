#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gribov/errors.hpp"
#include "gribov/params.hpp"

namespace gribov {

// Uniform Dirichlet discretization of the half-line operator
//   (lambda/4) [-d^2/dx^2 + (3/4)/x^2 + x^2((x^2 + rho)^2 - 2)]
// on nodes x_i = i h, i = 1..m. The similarity chain from the Bargmann ray is
// bijective, so this symmetric problem carries the same eigenvalues sigma.
struct HalfLineProblem {
    GribovParams params;
    double x_max = 0.0;          // confinement endpoint; Dirichlet just beyond x_m
    double h = 0.0;              // x_max / m
    double kinetic_scale = 0.0;  // lambda / 4
    std::vector<double> x;       // nodes i h
    std::vector<double> v;       // potential samples V(x_i)
};

// V(x) = (lambda/4) [ (3/4)/x^2 + x^2 ((x^2 + rho)^2 - 2) ]; +inf at both ends.
double halfline_potential(const GribovParams& p, double x);

// Endpoint heuristic max(4, (2 sigma_max/lambda)^{1/6} + sqrt(rho) + 2): the
// sextic growth of V makes modest X enough for any reasonable sigma_max.
double default_x_max(const GribovParams& p, double sigma_max);

// Sample the potential on a fresh grid. Requires mu, lambda > 0 and m >= 100.
HalfLineProblem build_problem(const GribovParams& p, double x_max, std::size_t m);

// k lowest eigenvalues of the symmetric tridiagonal discretization via Sturm
// bisection. Simple (strictly increasing) by 1-D oscillation theory. Throws
// domain_truncation_error when V(x_max) fails to clear the top eigenvalue.
std::vector<double> sturm_eigenvalues(const HalfLineProblem& prob, std::size_t k);

// Discrete eigenfunction for an eigenvalue from sturm_eigenvalues, by inverse
// iteration. Unit norm, sign fixed so the peak component is positive.
std::vector<double> sturm_eigenvector(const HalfLineProblem& prob, double sigma);

// Pointwise maps between the ray representations, all parametrized by rho:
//   u(y) = phi(-iy)  (axis restriction; a relabeling, kept implicit here)
//   u(y) = e^{(y+rho)^2/4} v(y)
//   v(y) = x^{1/2} w(x),  y = x^2
struct TransformChain {
    double rho = 0.0;

    double v_from_u(double y, double u) const;
    double u_from_v(double y, double v) const;
    double w_from_v(double x, double v) const;  // v evaluated at y = x^2
    double v_from_w(double y, double w) const;  // w evaluated at x = sqrt(y)
    double u_from_w(double x, double w) const;
    double w_from_u(double x, double u) const;
};

struct TransformedEigenfunction {
    std::vector<double> y;  // x_i^2
    std::vector<double> u;  // e^{(y+rho)^2/4} x^{1/2} w(x_i)
};

// Inverse chain applied to a discrete eigenfunction: u on the y-grid x_i^2.
TransformedEigenfunction eigenfunction_transform(const HalfLineProblem& prob,
                                                 const std::vector<double>& w);

// Boundary behavior fits for a discrete eigenfunction:
//   origin_slope:  log-log slope of |w| over x in [h, 10h]  (x^{3/2} gives 1.5)
//   tail_spread:   max - min of log|w| + (x^2+rho)^2/4 + log(x)/2 over the
//                  trusted tail window (bounded iff w follows the
//                  super-Gaussian branch)
//   u_drift:       relative variation of u(y) over the same window (the
//                  transformed eigenfunction approaches a constant)
// The tail window spans from the last |w| peak to where |w| sinks below
// 1e-11 of its maximum; beyond that, inverse-iteration noise dominates.
struct BoundaryDiagnostics {
    double origin_slope = 0.0;
    double tail_spread = 0.0;
    double u_drift = 0.0;
};
BoundaryDiagnostics boundary_diagnostics(const HalfLineProblem& prob,
                                         const std::vector<double>& w);

// Two-grid solve with Richardson extrapolation: eigenvalues at steps h and
// h/2 combine as (4 sigma_{h/2} - sigma_h)/3, lifting the second-difference
// error from h^2 to higher order.
struct HalfLineSolution {
    std::vector<double> coarse;        // step h
    std::vector<double> fine;          // step h/2
    std::vector<double> extrapolated;  // (4 fine - coarse) / 3
    HalfLineProblem problem;           // the fine problem, for eigenfunctions
};

// x_max = 0 selects default_x_max from a safe overestimate of sigma_k. The
// grid doubles from m until the top requested eigenvalue shifts below 1e-7
// (relative) between consecutive grids; failure to settle throws
// convergence_error.
HalfLineSolution solve_halfline(const GribovParams& p, std::size_t k, double x_max = 0.0,
                                std::size_t m = 4000);

} // namespace gribov
