#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gribov/errors.hpp"
#include "gribov/params.hpp"

namespace gribov {

// Parameter regime with no implemented integral representation (rho <= 0 on
// the negative axis).
struct unsupported_parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// theta(y) = y on [-1, 0], -1 on (-inf, -1]: weight of the measure theta(y)dy
// on the negative axis (used through |theta| since theta <= 0 there).
double weight_theta(double y);

// F(t) = int_0^t e^{u^2/2 + rho u} du, adaptive quadrature at rel. 1e-12.
// Overflows past t ~ 37; grid builders cap their extent well below that.
double positive_inner_integral(double rho, double t);

// I(t) = int_{-inf}^t e^{-(u - rho)^2/2} / u du for t < 0, computed through
// the substitution u = t - v with a certified Gaussian truncation. Negative
// and decreasing in t.
double negative_inner_integral(double rho, double t);

// Positive-axis kernel of the inverse,
//   N(y, s) = (1/(lambda s)) e^{-s^2/2 - rho s} F(min(y, s)),
// with the limits N(0, s) = 0 and N(y, 0) = 1/lambda (series of F(s)/s).
double kernel_positive_axis(const GribovParams& p, double y, double s);

// Negative-axis kernel
//   script-N(y, s) = e^{-rho y} (theta(y)/y)(s/theta(s)) e^{s^2/2} I(min(y, s)),
// evaluated in scaled form so it never overflows; <= 0 entrywise. The ratio
// theta(y)/y is removable at y -> 0-. Requires rho > 0.
double kernel_negative_axis(const GribovParams& p, double y, double s);

// Dominating kernel with |script-N| <= script-N-tilde pointwise:
//   e^{-rho^2/2} (theta(y)/y)(s/theta(s)) / (m(m - rho)), m = min(y, s) < 0.
double dominating_kernel(const GribovParams& p, double y, double s);

// Composite Gauss-Legendre discretization of one kernel on its half-axis,
// with the dense matrix K_ij = kernel(node_i, node_j) assembled once (the
// inner integral is cached per node since it depends on min(y, s) only).
struct KernelGrid {
    GribovParams params;
    bool negative_axis = false;
    double extent = 0.0;            // domain is [0, extent] or [-extent, 0]
    std::vector<double> nodes;      // ascending, strictly interior
    std::vector<double> weights;
    std::vector<double> boundaries; // panel boundaries including the endpoints
    std::vector<double> inner;      // F or scaled I at the nodes
    Eigen::MatrixXd kernel;
};

// Grid on [0, s_max] for the inverse kernel; `panels` equal panels, 32 nodes
// each. Requires mu, lambda > 0 and s_max in (0, 30].
KernelGrid positive_kernel_grid(const GribovParams& p, double s_max, std::size_t panels);

// Truncation point where the Gaussian envelope e^{-s^2/2 - rho s} has fallen
// below 1e-16 of its peak, with slack for polynomial factors. Meant for
// inverse application, whose certified window grows with the extent.
double default_positive_extent(const GribovParams& p);

// Tighter truncation for eigenvalue work (envelope below 1e-11): the panel
// budget then resolves the live part of the kernel instead of its dead tail,
// which is what limits Nystrom accuracy.
double spectral_positive_extent(const GribovParams& p);

// Grid on [-extent, 0] for the negative-axis kernel. A panel boundary is
// pinned at -1 where theta kinks; panel counts split proportionally.
KernelGrid negative_kernel_grid(const GribovParams& p, double extent, std::size_t panels);

struct InverseApplication {
    std::vector<double> y;      // = grid panel boundaries
    std::vector<complex_t> u;   // u(y) = int_0^inf N(y, s) psi(-is) ds
    std::vector<double> tail;   // per-row bound on the discarded tail: the
                                // row at y keeps the factor F(y), so rows
                                // near the edge carry intrinsically larger
                                // truncation error than the bulk
    double tail_bound = 0.0;    // max tail over the certified window y <= extent/2
};

// Applies the inverse through the grid quadrature; psi holds psi(-i s_j) at
// the grid nodes. Output y-grid is the panel boundaries: there the kernel's
// kink at s = y falls between panels, so every panel integrand stays smooth
// and the composite rule keeps its full order. Rows with y <= extent/2 form
// the certified window; throws domain_truncation_error when the tail bound
// on that window exceeds tail_tol.
InverseApplication apply_inverse(const KernelGrid& grid, const std::vector<complex_t>& psi,
                                 double tail_tol = 1e-8);

// (H p)(-is) on the given nodes for p(z) = sum_{n>=1} coeffs[n-1] z^n, from
// H z^n = mu n z^n + i lambda (n(n-1) z^{n-1} + n z^{n+1}).
std::vector<complex_t> polynomial_axis_image(const GribovParams& p,
                                             const std::vector<complex_t>& coeffs,
                                             const std::vector<double>& nodes);

// p(-iy) on the given nodes, same coefficient convention.
std::vector<complex_t> polynomial_axis_values(const std::vector<complex_t>& coeffs,
                                              const std::vector<double>& nodes);

// Discretized double integral of |script-N|^2 |theta(y)| |theta(s)| over the
// grid's domain square (the Hilbert-Schmidt norm squared in the weighted
// measure). Requires a negative-axis grid.
double hs_norm_estimate(const KernelGrid& grid);

// Same discretized integral for the dominating kernel (an upper bound).
double hs_norm_dominating(const KernelGrid& grid);

struct HsStudy {
    std::vector<double> extents;            // doubling domain ladder
    std::vector<double> by_extent;          // HS estimate at fixed panel density
    std::vector<std::size_t> panel_ladder;  // mesh refinement at the base extent
    std::vector<double> by_panels;
    double value = 0.0;                     // largest domain plus mesh correction
    double dominating = 0.0;                // dominating-kernel bound, largest domain
};

// Domain/mesh doubling study of the HS estimate. The domain ladder runs at
// fixed panel density (tail isolation); the mesh ladder doubles the panels
// three times at the base extent, where the quadrature error lives (it is
// local to the diagonal kink, not the tail). Sums are accumulated without
// storing the kernel matrix, so the ladders can reach grids far beyond what
// negative_kernel_grid would hold in memory. Throws convergence_error when
// the final doubling of either ladder fails to settle to saturation_tol
// (growth with the extent is the divergence signal).
HsStudy hs_norm_study(const GribovParams& p, std::size_t levels = 4, double base_extent = 12.0,
                      std::size_t base_panels = 24, double saturation_tol = 1e-4);

struct NystromResult {
    std::vector<double> sigma;          // 1/kappa_j for the leading kappa_j
    std::vector<complex_t> kappa;       // kernel eigenvalues, descending modulus
    double spectral_gap = 0.0;          // |kappa_2| / kappa_1, < 1 when simple
    std::vector<double> perron_vector;  // leading eigenvector, entrywise > 0
};

// Dense eigensolve of the weighted Nystrom matrix A_ij = K_ij w_j on the
// positive-axis grid; sigma_j = 1/kappa_j approximate the lowest Hamiltonian
// eigenvalues up to the grid's resolution. Throws invariant_violation
// when the leading eigenvalue is not a simple positive Perron root with an
// entrywise-positive eigenvector.
NystromResult nystrom_spectrum(const KernelGrid& grid, std::size_t k);

} // namespace gribov
