#pragma once

#include <stdexcept>

namespace gribov {

// Numerical non-convergence (maps to CLI exit code 3).
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural positivity/invariant guarantee failed (maps to CLI exit code 1).
struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The truncated computational domain is too small for the requested accuracy:
// a confinement endpoint below the spectral range, or an integral tail bound
// above tolerance.
struct domain_truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gribov
