#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gribov/params.hpp"

namespace gribov {

// No sign change of the growth indicator inside the supplied bracket.
struct no_root_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShootingConfig {
    double eps = 1e-3;            // series handoff point near the regular singularity
    std::size_t series_order = 20; // Frobenius order used to start the integration
    double y_max = 0.0;           // 0 selects max(8, rho + 6)
    double rel_tol = 1e-10;       // integrator tolerances
    double abs_tol = 1e-12;
    double tol_sigma = 1e-9;      // eigenvalue bracket width target
    std::size_t max_iter = 200;
    std::size_t ray_samples = 256; // dense output points for u(y) at the root; 0 disables
};

struct ShootingResult {
    double sigma = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double indicator = 0.0;                         // D(sigma; Y) at the reported root
    std::vector<std::pair<double, double>> history; // (sigma, D) pairs visited
    std::vector<double> ray_y;                      // grid on [eps, Y]
    std::vector<complex_t> ray_u;                   // phi(-i y): the Bargmann ray values
    std::vector<complex_t> ray_up;                  // d/dy of the same
};

// Growth indicator D(sigma; Y) = e^{-Y^2/2 - rho Y} u'(Y) for the solution with
// u(y) ~ y at 0. D -> nonzero constant for generic sigma and vanishes at
// eigenvalues. Integrates the weighted pair q = e^{-y^2/2 - rho y} u,
// c = e^{-y^2/2 - rho y} u', which never overflows:
//   q' = c - (y + rho) q,  c' = -(sigma / (lambda y)) q.
double growth_indicator(const GribovParams& p, double sigma, const ShootingConfig& cfg = {});

// Locate a root of D inside [sigma_lo, sigma_hi]; the endpoints must give
// opposite signs, otherwise no_root_error. Integrator breakdown surfaces as
// convergence_error with a stiffness note.
ShootingResult shoot_eigenvalue(const GribovParams& p, double sigma_lo, double sigma_hi,
                                const ShootingConfig& cfg = {});

// Scan [sigma_lo, sigma_hi] at n_scan + 1 points and return the sign-change brackets.
std::vector<std::pair<double, double>> find_shooting_brackets(const GribovParams& p,
                                                              double sigma_lo, double sigma_hi,
                                                              std::size_t n_scan,
                                                              const ShootingConfig& cfg = {});

// Resolved integration endpoint for the given parameters.
double shooting_y_max(const GribovParams& p, const ShootingConfig& cfg);

} // namespace gribov
