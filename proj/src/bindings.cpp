#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gribov/errors.hpp"
#include "gribov/halfline.hpp"
#include "gribov/heun.hpp"
#include "gribov/kernel.hpp"
#include "gribov/params.hpp"
#include "gribov/shooting.hpp"
#include "gribov/spectrum.hpp"

namespace py = pybind11;
using namespace gribov;

PYBIND11_MODULE(_core, m) {
    m.doc() = "spectral toolkit for the Gribov Hamiltonian in Bargmann space";

    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<invariant_violation>(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception<domain_truncation_error>(m, "DomainTruncationError",
                                                    PyExc_RuntimeError);
    py::register_exception<no_root_error>(m, "NoRootError", PyExc_RuntimeError);

    py::class_<GribovParams>(m, "GribovParams")
        .def(py::init<double, double>(), py::arg("mu") = 1.0, py::arg("lambda_") = 0.0)
        .def_readwrite("mu", &GribovParams::mu)
        .def_readwrite("lambda_", &GribovParams::lambda)
        .def("rho", &GribovParams::rho)
        .def("__repr__", [](const GribovParams& p) {
            return "GribovParams(mu=" + std::to_string(p.mu) +
                   ", lambda_=" + std::to_string(p.lambda) + ")";
        });

    py::class_<EigenPair>(m, "EigenPair")
        .def_readonly("sigma", &EigenPair::sigma)
        .def_readonly("residual", &EigenPair::residual)
        .def_property_readonly("coeffs",
                               [](const EigenPair& e) { return e.vector.coeffs; });

    m.def("eigen_spectrum", &eigen_spectrum, py::arg("params"), py::arg("trunc"),
          py::arg("k"), "lowest k eigenpairs of the truncated Jacobi matrix on B0");

    py::class_<ConvergenceStudy>(m, "ConvergenceStudy")
        .def_readonly("truncs", &ConvergenceStudy::truncs)
        .def_readonly("sigmas", &ConvergenceStudy::sigmas)
        .def_readonly("converged", &ConvergenceStudy::converged);

    m.def("convergence_study", &convergence_study, py::arg("params"), py::arg("k"),
          py::arg("truncs"), py::arg("rel_tol") = 1e-8,
          "track the lowest k eigenvalues across a truncation ladder");
    m.def("max_imag_ratio", &max_imag_ratio);
    m.def("min_real_part", &min_real_part);

    py::class_<SeriesSolution>(m, "SeriesSolution")
        .def_readonly("exponent", &SeriesSolution::exponent)
        .def_readonly("alpha_param", &SeriesSolution::alpha_param)
        .def_readonly("coeffs", &SeriesSolution::coeffs)
        .def("trunc", &SeriesSolution::trunc);

    m.def("frobenius_coefficients", &frobenius_coefficients, py::arg("params"),
          py::arg("sigma"), py::arg("n_terms"), py::arg("branch") = 1,
          "analytic Frobenius branch at z = 0");
    m.def("evaluate_series", &evaluate_series, py::arg("series"), py::arg("x"));

    py::class_<ShootingResult>(m, "ShootingResult")
        .def_readonly("sigma", &ShootingResult::sigma)
        .def_readonly("converged", &ShootingResult::converged)
        .def_readonly("iterations", &ShootingResult::iterations)
        .def_readonly("indicator", &ShootingResult::indicator);

    m.def(
        "find_shooting_brackets",
        [](const GribovParams& p, double sigma_lo, double sigma_hi, std::size_t n_scan) {
            return find_shooting_brackets(p, sigma_lo, sigma_hi, n_scan);
        },
        py::arg("params"), py::arg("sigma_lo"), py::arg("sigma_hi"), py::arg("n_scan"),
        "sign-change brackets of the decay indicator along the real sigma axis");
    m.def(
        "shoot_eigenvalue",
        [](const GribovParams& p, double sigma_lo, double sigma_hi) {
            return shoot_eigenvalue(p, sigma_lo, sigma_hi);
        },
        py::arg("params"), py::arg("sigma_lo"), py::arg("sigma_hi"),
        "bisect the indicator inside a bracket");

    py::class_<HalfLineSolution>(m, "HalfLineSolution")
        .def_readonly("coarse", &HalfLineSolution::coarse)
        .def_readonly("fine", &HalfLineSolution::fine)
        .def_readonly("extrapolated", &HalfLineSolution::extrapolated);

    m.def(
        "solve_halfline",
        [](const GribovParams& p, std::size_t k, double x_max, std::size_t mesh) {
            return solve_halfline(p, k, x_max, mesh);
        },
        py::arg("params"), py::arg("k"), py::arg("x_max") = 0.0, py::arg("mesh") = 4000,
        "half-line Schrodinger eigenvalues with Richardson extrapolation");
    m.def("halfline_potential", &halfline_potential, py::arg("params"), py::arg("x"));

    m.def("weight_theta", &weight_theta);
    m.def("kernel_positive_axis", &kernel_positive_axis, py::arg("params"), py::arg("y"),
          py::arg("s"));
    m.def("kernel_negative_axis", &kernel_negative_axis, py::arg("params"), py::arg("y"),
          py::arg("s"));
    m.def("dominating_kernel", &dominating_kernel, py::arg("params"), py::arg("y"),
          py::arg("s"));
    m.def("default_positive_extent", &default_positive_extent);
    m.def("spectral_positive_extent", &spectral_positive_extent);

    py::class_<NystromResult>(m, "NystromResult")
        .def_readonly("sigma", &NystromResult::sigma)
        .def_readonly("kappa", &NystromResult::kappa)
        .def_readonly("spectral_gap", &NystromResult::spectral_gap)
        .def_readonly("perron_vector", &NystromResult::perron_vector);

    m.def(
        "nystrom_spectrum",
        [](const GribovParams& p, double s_max, std::size_t panels, std::size_t k) {
            return nystrom_spectrum(positive_kernel_grid(p, s_max, panels), k);
        },
        py::arg("params"), py::arg("s_max"), py::arg("panels"), py::arg("k"),
        "build the positive-axis grid and solve the inverse-kernel eigenproblem");

    m.def(
        "apply_inverse_polynomial",
        [](const GribovParams& p, const std::vector<complex_t>& coeffs, double s_max,
           std::size_t panels, double tail_tol) {
            const KernelGrid g = positive_kernel_grid(p, s_max, panels);
            const InverseApplication inv =
                apply_inverse(g, polynomial_axis_image(p, coeffs, g.nodes), tail_tol);
            return py::make_tuple(inv.y, inv.u, inv.tail_bound);
        },
        py::arg("params"), py::arg("coeffs"), py::arg("s_max"), py::arg("panels"),
        py::arg("tail_tol") = 1e-8,
        "apply the inverse to the axis image of the polynomial; returns (y, u, tail_bound)");

    py::class_<HsStudy>(m, "HsStudy")
        .def_readonly("extents", &HsStudy::extents)
        .def_readonly("by_extent", &HsStudy::by_extent)
        .def_readonly("panel_ladder", &HsStudy::panel_ladder)
        .def_readonly("by_panels", &HsStudy::by_panels)
        .def_readonly("value", &HsStudy::value)
        .def_readonly("dominating", &HsStudy::dominating);

    m.def("hs_norm_study", &hs_norm_study, py::arg("params"), py::arg("levels") = 4,
          py::arg("base_extent") = 12.0, py::arg("base_panels") = 24,
          py::arg("saturation_tol") = 1e-4,
          "negative-axis Hilbert-Schmidt estimate under domain and mesh doubling");
}
