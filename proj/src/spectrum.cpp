#include "gribov/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gribov/banded_operator.hpp"
#include "gribov/errors.hpp"

namespace gribov {

std::vector<EigenPair> eigen_spectrum(const GribovParams& p, std::size_t trunc, std::size_t k) {
    if (trunc < 2) throw std::invalid_argument("spectrum needs trunc >= 2");
    if (k == 0 || k > trunc - 1)
        throw std::invalid_argument("requested eigenvalue count must satisfy 1 <= k <= trunc - 1");

    const auto op = build_hamiltonian(p, trunc);
    const Eigen::MatrixXcd block =
        to_dense(op).block(1, 1, static_cast<Eigen::Index>(trunc - 1),
                           static_cast<Eigen::Index>(trunc - 1));

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block, true);
    if (solver.info() != Eigen::Success)
        throw convergence_error("eigensolver failed at trunc = " + std::to_string(trunc) +
                                "; retry with a larger or smaller truncation");

    std::vector<std::size_t> order(trunc - 1);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto va = vals(static_cast<Eigen::Index>(a));
        const auto vb = vals(static_cast<Eigen::Index>(b));
        if (va.real() != vb.real()) return va.real() < vb.real();
        return va.imag() < vb.imag();
    });

    std::vector<EigenPair> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto idx = static_cast<Eigen::Index>(order[j]);
        EigenPair pair;
        pair.sigma = vals(idx);

        CoeffVector v;
        v.coeffs.assign(trunc, complex_t{0.0, 0.0});
        double norm2 = 0.0;
        for (std::size_t n = 1; n < trunc; ++n) {
            v.coeffs[n] = solver.eigenvectors()(static_cast<Eigen::Index>(n - 1), idx);
            norm2 += std::norm(v.coeffs[n]);
        }
        const double norm = std::sqrt(norm2);
        std::size_t peak = 1;
        for (std::size_t n = 2; n < trunc; ++n)
            if (std::abs(v.coeffs[n]) > std::abs(v.coeffs[peak])) peak = n;
        const complex_t phase = std::abs(v.coeffs[peak]) / (v.coeffs[peak] * norm);
        for (auto& c : v.coeffs) c *= phase;

        // Backward error on the interior band, rows 1..trunc-2: the edge row is
        // excluded because its defect is the truncation leak, assessed instead
        // through convergence_study across truncations.
        const auto hv = apply_operator(op, v);
        double defect2 = 0.0;
        for (std::size_t n = 1; n + 1 < trunc; ++n)
            defect2 += std::norm(hv[n] - pair.sigma * v[n]);
        pair.residual = std::sqrt(defect2);

        pair.vector = std::move(v);
        out.push_back(std::move(pair));
    }
    return out;
}

ConvergenceStudy convergence_study(const GribovParams& p, std::size_t k,
                                   const std::vector<std::size_t>& truncs, double rel_tol) {
    if (truncs.size() < 2) throw std::invalid_argument("convergence study needs >= 2 truncations");
    ConvergenceStudy study;
    study.truncs = truncs;
    for (std::size_t n : truncs) {
        const auto pairs = eigen_spectrum(p, n, k);
        std::vector<complex_t> sig(pairs.size());
        std::transform(pairs.begin(), pairs.end(), sig.begin(),
                       [](const EigenPair& e) { return e.sigma; });
        study.sigmas.push_back(std::move(sig));
    }
    const auto& last = study.sigmas[study.sigmas.size() - 1];
    const auto& prev = study.sigmas[study.sigmas.size() - 2];
    study.converged.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        study.converged[j] = std::abs(last[j] - prev[j]) <= rel_tol * (1.0 + std::abs(last[j]));
    return study;
}

Eigen::MatrixXcd biorthogonality_matrix(const std::vector<EigenPair>& pairs) {
    const auto m = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXcd g(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            const auto& va = pairs[static_cast<std::size_t>(a)].vector.coeffs;
            const auto& vb = pairs[static_cast<std::size_t>(b)].vector.coeffs;
            complex_t s{0.0, 0.0};
            const std::size_t n = std::min(va.size(), vb.size());
            for (std::size_t i = 0; i < n; ++i) s += va[i] * vb[i];
            g(a, b) = s;
        }
    return g;
}

std::vector<int> nu_signs(const std::vector<EigenPair>& pairs, double tol) {
    std::vector<int> signs;
    signs.reserve(pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto& c = pairs[j].vector.coeffs;
        double s = 0.0, norm2 = 0.0;
        double parity = 1.0;
        for (const auto& ck : c) {
            s += parity * std::norm(ck);
            norm2 += std::norm(ck);
            parity = -parity;
        }
        if (std::abs(s) <= tol * norm2)
            throw degenerate_sign_error("parity-weighted norm of eigenvector " +
                                        std::to_string(j) + " vanished at tolerance " +
                                        std::to_string(tol));
        signs.push_back(s > 0.0 ? 1 : -1);
    }
    return signs;
}

Eigen::MatrixXcd indefinite_gram(const std::vector<EigenPair>& pairs,
                                 const std::vector<int>& signs) {
    if (signs.size() != pairs.size())
        throw std::invalid_argument("one sign per eigenpair required");
    const auto m = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXcd g(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            const auto& va = pairs[static_cast<std::size_t>(a)].vector.coeffs;
            const auto& vb = pairs[static_cast<std::size_t>(b)].vector.coeffs;
            complex_t s{0.0, 0.0};
            double parity = 1.0;
            const std::size_t n = std::min(va.size(), vb.size());
            for (std::size_t i = 0; i < n; ++i) {
                s += std::conj(va[i]) * parity * vb[i];
                parity = -parity;
            }
            g(a, b) = static_cast<double>(signs[static_cast<std::size_t>(b)]) * s;
        }
    return g;
}

CompletenessResult completeness_residual(const std::vector<EigenPair>& pairs,
                                         const CoeffVector& target, std::size_t k_max,
                                         double gram_tol) {
    if (!target.in_b0()) throw std::invalid_argument("completeness target must lie in B0");
    for (std::size_t j = 1; j < pairs.size(); ++j)
        if (pairs[j].sigma.real() < pairs[j - 1].sigma.real())
            throw std::invalid_argument("eigenpairs must be sorted by ascending real part");
    k_max = std::min(k_max, pairs.size());

    CompletenessResult out;
    std::size_t space = target.coeffs.size();
    for (std::size_t j = 0; j < k_max; ++j)
        space = std::max(space, pairs[j].vector.coeffs.size());

    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space));
    for (std::size_t i = 0; i < target.coeffs.size(); ++i)
        t(static_cast<Eigen::Index>(i)) = target.coeffs[i];
    Eigen::MatrixXcd basis(static_cast<Eigen::Index>(space), static_cast<Eigen::Index>(k_max));
    basis.setZero();

    std::vector<complex_t> defect(space, complex_t{0.0, 0.0});
    std::copy(target.coeffs.begin(), target.coeffs.end(), defect.begin());
    for (std::size_t j = 0; j < k_max; ++j) {
        const auto& v = pairs[j].vector.coeffs;
        complex_t gjj{0.0, 0.0}, proj{0.0, 0.0};
        for (std::size_t i = 0; i < v.size(); ++i) gjj += v[i] * v[i];
        const std::size_t n = std::min(v.size(), target.coeffs.size());
        for (std::size_t i = 0; i < n; ++i) proj += v[i] * target.coeffs[i];
        if (std::abs(gjj) < gram_tol) {
            out.skipped.push_back(j);
        } else {
            const complex_t a = proj / gjj;
            for (std::size_t i = 0; i < v.size(); ++i) defect[i] -= a * v[i];
        }
        double r2 = 0.0;
        for (const auto& d : defect) r2 += std::norm(d);
        out.residuals.push_back(std::sqrt(r2));

        for (std::size_t i = 0; i < v.size(); ++i)
            basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
        const auto cols = static_cast<Eigen::Index>(j + 1);
        const Eigen::VectorXcd coef =
            basis.leftCols(cols).colPivHouseholderQr().solve(t);
        out.best_fit.push_back((t - basis.leftCols(cols) * coef).norm());
    }
    return out;
}

double max_imag_ratio(const std::vector<EigenPair>& pairs) {
    double worst = 0.0;
    for (const auto& e : pairs)
        worst = std::max(worst, std::abs(e.sigma.imag()) / (1.0 + std::abs(e.sigma)));
    return worst;
}

double min_real_part(const std::vector<EigenPair>& pairs) {
    double low = std::numeric_limits<double>::infinity();
    for (const auto& e : pairs) low = std::min(low, e.sigma.real());
    return low;
}

} // namespace gribov
