#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "gribov/coeff_vector.hpp"
#include "gribov/halfline.hpp"
#include "gribov/heun.hpp"
#include "gribov/kernel.hpp"
#include "gribov/params.hpp"
#include "gribov/shooting.hpp"
#include "gribov/spectrum.hpp"

namespace gribov {

// One eigenvalue row of the canonical report. `residual` is the method's own
// defect measure: jacobi row defect, shooting |D|, sturm Richardson shift,
// nystrom node-doubling shift. `converged` is the method's own flag; the
// comparison report only matches rows both methods flag converged.
struct SpectralEntry {
    complex_t sigma{0.0, 0.0};
    double residual = 0.0;
    bool converged = false;
};

// Canonical cross-method spectrum container, one per method per run.
struct SpectralReport {
    std::string method;        // jacobi | shooting | sturm | kernel
    double mu = 0.0;
    double lambda = 0.0;
    std::size_t resolution = 0; // truncation, grid points, or quadrature nodes
    double accuracy = 0.0;      // advertised rel accuracy; 0 defers to the comparison tol
    std::vector<SpectralEntry> eigenvalues;
    std::vector<std::size_t> ladder;             // truncation ladder, when one ran
    std::vector<std::vector<complex_t>> ladder_sigmas; // sigmas per ladder rung
};

// Every complex number serializes as the [re, im] pair.
nlohmann::json complex_json(const complex_t& z);
nlohmann::json coeffs_json(const std::vector<complex_t>& coeffs);

// CoeffVector: a JSON array of [re, im] pairs.
nlohmann::json coeff_vector_json(const CoeffVector& v);

// SeriesSolution: {exponent, alpha_param, coeffs, trunc}.
nlohmann::json series_json(const SeriesSolution& s);

nlohmann::json report_json(const SpectralReport& r);

// Adapters from the pipeline result types. The jacobi adapter takes the
// convergence study that produced the flags; resolutions and residuals come
// from the results themselves.
SpectralReport report_from_jacobi(const GribovParams& p, std::size_t trunc,
                                  const std::vector<EigenPair>& pairs,
                                  const ConvergenceStudy& study);
SpectralReport report_from_shooting(const GribovParams& p,
                                    const std::vector<ShootingResult>& roots);
SpectralReport report_from_halfline(const GribovParams& p, const HalfLineSolution& sol);
// prev_sigma: leading eigenvalues from the half-node-count grid; the doubling
// shift provides the residual and the 1e-4 convergence flag.
SpectralReport report_from_nystrom(const GribovParams& p, const KernelGrid& grid,
                                   const NystromResult& r, const std::vector<double>& prev_sigma);

// Pairwise comparison across reports: a mode is comparable for a method pair
// only when both flag it converged; each pair is gated at
// max(rel_tol, accuracy_a, accuracy_b) so a coarse method (kernel, 1e-4) is
// held to its own advertised accuracy, not the fine methods' tolerance. Shape:
//   {mu, lambda, tolerance, method_accuracy, methods, modes: [{mode, values,
//    converged, comparable, max_rel_delta, pass}], max_rel_delta, all_pass}
nlohmann::json compare_reports(const std::vector<SpectralReport>& reports, double rel_tol);

// Plot-ready CSV: "mode,sigma_re,sigma_im,residual,converged" rows.
std::string spectrum_csv(const SpectralReport& r);

// Kernel matrix as a bordered CSV: first row 0,s_1..s_Q, then y_i,K_i1..K_iQ.
std::string kernel_csv(const KernelGrid& g);

// Series coefficients as "n,re,im" rows.
std::string series_csv(const SeriesSolution& s);

// Writes content to path, creating parent directories; throws
// std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

} // namespace gribov
