#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "gribov/coeff_vector.hpp"

namespace gribov {

// Tridiagonal operator on the truncated basis e_0..e_{N-1}. lower[n] is the
// coefficient of e_{n+1} in H e_n and upper[n] that of e_{n-1}; for the Gribov
// Hamiltonian the full matrix is complex symmetric (entry (n,n+1) == (n+1,n)).
struct BandedOperator {
    std::size_t trunc = 0;
    std::vector<double> diag;
    std::vector<complex_t> lower; // filled for n = 0..N-2, last slot kept zero
    std::vector<complex_t> upper; // filled for n = 1..N-1, slot 0 kept zero
};

// H e_n = mu n e_n + i lambda [ (n-1) sqrt(n) e_{n-1} + n sqrt(n+1) e_{n+1} ];
// the vacuum row/column is identically zero.
BandedOperator build_hamiltonian(const GribovParams& p, std::size_t trunc);

// Matrix-vector product. The last row misses the l_{N-1} v_N term; that
// truncation-edge loss is the caller's concern and is not masked here.
CoeffVector apply_operator(const BandedOperator& op, const CoeffVector& v);

// P M P with (P v)_n = (-1)^n v_n; equals build_hamiltonian with
// lambda -> -lambda exactly (off-diagonal sign flips only).
BandedOperator parity_conjugate(const BandedOperator& op);

// Assembles mu A*A + i lambda (D + D* - (A + A*)) with D = A Nop from the
// elementary factor matrices and returns the max-norm difference against
// build_hamiltonian on the leading (N-2)x(N-2) block (truncation edge excluded).
double laguerre_factorization_residual(const GribovParams& p, std::size_t trunc);

Eigen::MatrixXcd to_dense(const BandedOperator& op);

} // namespace gribov
