#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gribov/params.hpp"

namespace gribov {

// One run of the toolkit: a subcommand plus the knobs shared across pipelines.
// grid = 0 picks the per-method default (sturm mesh 4000, kernel 21 panels).
struct RunConfig {
    std::string command;
    double mu = 1.0;
    double lambda = 0.5;
    std::size_t k = 4;
    std::vector<std::string> methods{"jacobi"};
    std::size_t trunc = 256;
    std::size_t grid = 0;
    std::string out_dir = ".";
    std::string format = "json";
    double tol_compare = 1e-6;
    double tol_residual = 1e-8;
    double tol_tail = 1e-8;
    double sigma = 1.0;    // series expansion point
    std::size_t order = 24; // series truncation order
    bool lambda_flipped = false; // set when ingestion normalized lambda := |lambda|
};

// Thrown by parse_cli when the user asked for --help; carries the help text.
struct help_requested {
    std::string text;
};

// Parse argv. An optional --config FILE names a JSON document whose keys
// mirror the long flag names; explicit flags override file values. Throws
// std::invalid_argument on bad usage and help_requested on --help.
RunConfig parse_cli(int argc, const char* const* argv);

// Enforce config invariants (positive tolerances, nonempty known methods,
// k >= 1, format json|csv) and apply the lambda := |lambda| normalization
// once; the spectrum is invariant under the sign flip.
void normalize_config(RunConfig& cfg);

// Execute the subcommand, writing report files under out_dir and a
// human-readable trace to log. Returns 0 when every gate passes, 1 when a
// comparison or invariant gate fails. Module errors propagate as exceptions.
int run(const RunConfig& cfg, std::ostream& log);

// Exit-code taxonomy: 1 invariant failure, 2 configuration error,
// 3 numerical non-convergence.
int exit_code_for(const std::exception& e);

// Short label for the structured error record ("invariant_failure",
// "configuration_error", "non_convergence").
std::string error_kind(const std::exception& e);

} // namespace gribov
