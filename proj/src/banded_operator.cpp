#include "gribov/banded_operator.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace gribov {

BandedOperator build_hamiltonian(const GribovParams& p, std::size_t trunc) {
    if (trunc < 2) throw std::invalid_argument("truncation must be >= 2");
    BandedOperator op;
    op.trunc = trunc;
    op.diag.assign(trunc, 0.0);
    op.lower.assign(trunc, complex_t(0.0));
    op.upper.assign(trunc, complex_t(0.0));
    const complex_t il(0.0, p.lambda);
    for (std::size_t n = 0; n < trunc; ++n) {
        const double dn = static_cast<double>(n);
        op.diag[n] = p.mu * dn;
        if (n + 1 < trunc) op.lower[n] = il * dn * std::sqrt(dn + 1.0);
        if (n >= 1) op.upper[n] = il * (dn - 1.0) * std::sqrt(dn);
    }
    return op;
}

CoeffVector apply_operator(const BandedOperator& op, const CoeffVector& v) {
    if (op.trunc != v.trunc())
        throw std::invalid_argument("operator/vector truncation mismatch");
    const std::size_t N = op.trunc;
    CoeffVector w(N);
    for (std::size_t n = 0; n < N; ++n) {
        complex_t acc = op.diag[n] * v[n];
        if (n >= 1) acc += op.lower[n - 1] * v[n - 1];
        if (n + 1 < N) acc += op.upper[n + 1] * v[n + 1];
        w[n] = acc;
    }
    return w;
}

BandedOperator parity_conjugate(const BandedOperator& op) {
    BandedOperator out = op;
    for (auto& l : out.lower) l = -l;
    for (auto& u : out.upper) u = -u;
    return out;
}

Eigen::MatrixXcd to_dense(const BandedOperator& op) {
    const auto N = static_cast<Eigen::Index>(op.trunc);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index n = 0; n < N; ++n) {
        m(n, n) = op.diag[n];
        if (n + 1 < N) m(n + 1, n) = op.lower[n];
        if (n >= 1) m(n - 1, n) = op.upper[n];
    }
    return m;
}

double laguerre_factorization_residual(const GribovParams& p, std::size_t trunc) {
    if (trunc < 4) throw std::invalid_argument("factorization check needs truncation >= 4");
    const auto N = static_cast<Eigen::Index>(trunc);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    Eigen::MatrixXcd Ad = Eigen::MatrixXcd::Zero(N, N);
    Eigen::MatrixXcd Nop = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index n = 0; n < N; ++n) {
        Nop(n, n) = static_cast<double>(n);
        if (n >= 1) A(n - 1, n) = std::sqrt(static_cast<double>(n));
        if (n + 1 < N) Ad(n + 1, n) = std::sqrt(static_cast<double>(n) + 1.0);
    }
    const Eigen::MatrixXcd D = A * Nop;
    const Eigen::MatrixXcd Dd = Nop * Ad;
    const complex_t il(0.0, p.lambda);
    const Eigen::MatrixXcd F = p.mu * (Ad * A) + il * (D + Dd - (A + Ad));

    const Eigen::MatrixXcd H = to_dense(build_hamiltonian(p, trunc));
    const Eigen::Index m = N - 2;
    return (F - H).topLeftCorner(m, m).cwiseAbs().maxCoeff();
}

} // namespace gribov
