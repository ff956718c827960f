#pragma once

#include <complex>
#include <stdexcept>

namespace gribov {

using complex_t = std::complex<double>;

// Couplings of the Gribov Hamiltonian H = mu*N + i*lambda*H_I on Bargmann space,
// with N = z d/dz and H_I = z d^2/dz^2 + z^2 d/dz.
struct GribovParams {
    double mu = 1.0;
    double lambda = 0.0;

    bool has_rho() const { return lambda != 0.0; }

    // rho = mu/lambda; every axis-side formulation is parametrized by it.
    double rho() const {
        if (!has_rho()) throw std::domain_error("rho is undefined when lambda == 0");
        return mu / lambda;
    }

    // Lower-bound checks, the half-line form and the kernel module assume positivity.
    void require_positive() const {
        if (!(mu > 0.0) || !(lambda > 0.0))
            throw std::invalid_argument("operation requires mu > 0 and lambda > 0");
    }
};

} // namespace gribov
