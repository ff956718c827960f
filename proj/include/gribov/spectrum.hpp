#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gribov/coeff_vector.hpp"
#include "gribov/params.hpp"

namespace gribov {

// The parity-weighted norm of an eigenvector vanished; the sign index is
// undecidable at this tolerance and is recorded rather than guessed.
struct degenerate_sign_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenPair {
    complex_t sigma{0.0, 0.0};
    CoeffVector vector;   // unit norm, c_0 = 0, largest component rotated positive
    double residual = 0.0; // max row defect of (H - sigma) v in the once-enlarged truncation
};

// Dense spectrum of the B0 sub-block (rows/columns 1..trunc-1), sorted by
// ascending real part. Requires k <= trunc - 1. Solver breakdown raises
// convergence_error with truncation advice.
std::vector<EigenPair> eigen_spectrum(const GribovParams& p, std::size_t trunc, std::size_t k);

struct ConvergenceStudy {
    std::vector<std::size_t> truncs;
    std::vector<std::vector<complex_t>> sigmas; // sigmas[i][j]: eigenvalue j at truncs[i]
    std::vector<bool> converged;                // eigenvalue j stable across the last two truncs
};

// Track the lowest k eigenvalues across a truncation ladder; an eigenvalue is
// converged when the last two truncations agree to rel_tol.
ConvergenceStudy convergence_study(const GribovParams& p, std::size_t k,
                                   const std::vector<std::size_t>& truncs,
                                   double rel_tol = 1e-8);

// Plain bilinear Gram matrix G_mn = v_m^T v_n (no conjugation): the complex
// symmetric H makes distinct eigenvectors bilinear-orthogonal.
Eigen::MatrixXcd biorthogonality_matrix(const std::vector<EigenPair>& pairs);

// Sign index nu_n = sign sum_k (-1)^k |c_{n,k}|^2. A value below tol in
// magnitude raises degenerate_sign_error.
std::vector<int> nu_signs(const std::vector<EigenPair>& pairs, double tol = 1e-10);

// Indefinite product matrix <v_m, P nu v_n> = nu_n sum_k conj(v_{m,k}) (-1)^k v_{n,k}:
// diagonal on the eigenbasis with positive diagonal entries.
Eigen::MatrixXcd indefinite_gram(const std::vector<EigenPair>& pairs,
                                 const std::vector<int>& signs);

struct CompletenessResult {
    std::vector<double> residuals;     // residuals[k-1] after the first k expansion terms
    std::vector<double> best_fit;      // distance of target to span{phi_1..phi_k} (monotone)
    std::vector<std::size_t> skipped;  // indices with |G_jj| below gram_tol, left out
};

// Expand target over the eigenbasis two ways. The biorthogonal route uses the
// coefficients v_j^T t / G_jj; its partial sums overshoot before settling
// because the eigenbasis is complete but far from Riesz, and the tiny G_jj of
// higher modes cap its floor in double precision. The best_fit route is the
// least-squares distance to the growing span, which decreases monotonically.
// Preconditions: target in B0, pairs sorted by ascending real part.
CompletenessResult completeness_residual(const std::vector<EigenPair>& pairs,
                                         const CoeffVector& target, std::size_t k_max,
                                         double gram_tol = 1e-12);

// Worst |Im sigma| / (1 + |sigma|) over the pairs.
double max_imag_ratio(const std::vector<EigenPair>& pairs);

// Smallest Re sigma over the pairs (lower-bound check against mu).
double min_real_part(const std::vector<EigenPair>& pairs);

} // namespace gribov
