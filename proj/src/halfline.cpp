#include "gribov/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>

#include "gribov/errors.hpp"

namespace gribov {

namespace {

// Eigenvalue count of (T - x) with nonpositive sign, T symmetric tridiagonal
// with diagonal d and constant off-diagonal squared off2. Standard Sturm
// sequence with the LAPACK-style pivot floor.
std::size_t sturm_count(const std::vector<double>& d, double off2, double x) {
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, off2);
    std::size_t count = 0;
    double q = d[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = d[i] - x - off2 / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

// Solve T z = b for tridiagonal T given by (dl, dd, du) with partial pivoting
// (gtsv-style, destructive). du2 holds the fill-in created by row swaps.
void tridiag_solve(std::vector<double> dl, std::vector<double> dd, std::vector<double> du,
                   std::vector<double>& b) {
    const std::size_t n = dd.size();
    const double tiny = std::numeric_limits<double>::min();
    std::vector<double> du2(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i + 1])) {
            if (dd[i] == 0.0) dd[i] = tiny;
            const double fact = dl[i + 1] / dd[i];
            dd[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            const double fact = dd[i] / dl[i + 1];
            dd[i] = dl[i + 1];
            const double tmp = dd[i + 1];
            dd[i + 1] = du[i] - fact * tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = tmp;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= fact * b[i];
        }
    }
    if (dd[n - 1] == 0.0) dd[n - 1] = tiny;
    b[n - 1] /= dd[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    if (n > 2)
        for (std::size_t i = n - 2; i-- > 0;)
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
}

std::vector<double> matrix_diagonal(const HalfLineProblem& prob) {
    const double t = prob.kinetic_scale / (prob.h * prob.h);
    std::vector<double> d(prob.v.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 2.0 * t + prob.v[i];
    return d;
}

// Trusted tail window of a discrete eigenfunction: from where |w| has fallen
// to a tenth of its peak out to where it sinks below 1e-11 of the peak.
// Beyond that the samples are inverse-iteration noise.
std::pair<std::size_t, std::size_t> tail_window(const std::vector<double>& w) {
    std::size_t peak = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (std::abs(w[i]) > std::abs(w[peak])) peak = i;
    const double top = std::abs(w[peak]);
    std::size_t lo = peak;
    while (lo + 1 < w.size() && std::abs(w[lo]) > 0.1 * top) ++lo;
    std::size_t hi = lo;
    while (hi + 1 < w.size() && std::abs(w[hi + 1]) > 1e-11 * top) ++hi;
    return {lo, hi};
}

} // namespace

double halfline_potential(const GribovParams& p, double x) {
    const double rho = p.rho();
    const double x2 = x * x;
    const double quartic = (x2 + rho) * (x2 + rho) - 2.0;
    return 0.25 * p.lambda * (0.75 / x2 + x2 * quartic);
}

double default_x_max(const GribovParams& p, double sigma_max) {
    const double rho = p.rho();
    const double wall = std::pow(2.0 * std::max(sigma_max, 1.0) / p.lambda, 1.0 / 6.0);
    return std::max(4.0, wall + std::sqrt(rho) + 2.0);
}

HalfLineProblem build_problem(const GribovParams& p, double x_max, std::size_t m) {
    p.require_positive();
    if (m < 100) throw std::invalid_argument("half-line grid needs m >= 100");
    if (!(x_max > 0.0) || !std::isfinite(x_max))
        throw std::invalid_argument("half-line endpoint must be positive and finite");

    HalfLineProblem prob;
    prob.params = p;
    prob.x_max = x_max;
    prob.h = x_max / static_cast<double>(m);
    prob.kinetic_scale = 0.25 * p.lambda;
    prob.x.resize(m);
    prob.v.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        prob.x[i] = static_cast<double>(i + 1) * prob.h;
        prob.v[i] = halfline_potential(p, prob.x[i]);
    }
    return prob;
}

std::vector<double> sturm_eigenvalues(const HalfLineProblem& prob, std::size_t k) {
    const std::size_t m = prob.v.size();
    if (k == 0 || k > m) throw std::invalid_argument("eigenvalue count must satisfy 1 <= k <= m");

    const auto d = matrix_diagonal(prob);
    const double e = -prob.kinetic_scale / (prob.h * prob.h);
    const double off2 = e * e;

    const auto [dmin, dmax] = std::minmax_element(d.begin(), d.end());
    double glo = *dmin - 2.0 * std::abs(e);
    double ghi = *dmax + 2.0 * std::abs(e);

    std::vector<double> out(k);
    for (std::size_t j = 1; j <= k; ++j) {
        double a = glo, b = ghi;
        while (b - a > 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max({1.0, std::abs(a), std::abs(b)})) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(d, off2, mid) >= j)
                b = mid;
            else
                a = mid;
        }
        out[j - 1] = 0.5 * (a + b);
        glo = out[j - 1]; // eigenvalues are simple and increasing
    }

    const double margin = std::max(1.0, 0.1 * std::abs(out.back()));
    if (prob.v.back() < out.back() + margin)
        throw domain_truncation_error(
            "endpoint x_max = " + std::to_string(prob.x_max) + " gives V(x_max) = " +
            std::to_string(prob.v.back()) + ", below the requested eigenvalue " +
            std::to_string(out.back()) + "; enlarge the domain");
    return out;
}

std::vector<double> sturm_eigenvector(const HalfLineProblem& prob, double sigma) {
    const std::size_t m = prob.v.size();
    const auto d = matrix_diagonal(prob);
    const double e = -prob.kinetic_scale / (prob.h * prob.h);

    // Small relative shift keeps the factorization off exact singularity.
    const double shift = sigma * (1.0 + 16.0 * std::numeric_limits<double>::epsilon());
    std::vector<double> dd(m), dl(m, e), du(m, e);
    for (std::size_t i = 0; i < m; ++i) dd[i] = d[i] - shift;

    std::mt19937 rng(9176);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> w(m);
    for (auto& wi : w) wi = unit(rng);

    auto normalize = [](std::vector<double>& v) {
        double n2 = 0.0;
        for (double vi : v) n2 += vi * vi;
        const double n = std::sqrt(n2);
        for (auto& vi : v) vi /= n;
    };
    normalize(w);

    for (std::size_t iter = 0; iter < 8; ++iter) {
        std::vector<double> z = w;
        tridiag_solve(dl, dd, du, z);
        normalize(z);
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += z[i] * w[i];
        if (dot < 0.0)
            for (auto& zi : z) zi = -zi;
        double diff = 0.0;
        for (std::size_t i = 0; i < m; ++i) diff = std::max(diff, std::abs(z[i] - w[i]));
        w = std::move(z);
        if (diff < 1e-13) break;
    }

    std::size_t peak = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (std::abs(w[i]) > std::abs(w[peak])) peak = i;
    if (w[peak] < 0.0)
        for (auto& wi : w) wi = -wi;
    return w;
}

double TransformChain::v_from_u(double y, double u) const {
    const double s = y + rho;
    return std::exp(-0.25 * s * s) * u;
}

double TransformChain::u_from_v(double y, double v) const {
    const double s = y + rho;
    return std::exp(0.25 * s * s) * v;
}

double TransformChain::w_from_v(double x, double v) const { return v / std::sqrt(x); }

double TransformChain::v_from_w(double y, double w) const { return std::pow(y, 0.25) * w; }

double TransformChain::u_from_w(double x, double w) const {
    // exp((x^2+rho)^2/4) alone can overflow where w has underflowed; fuse the
    // factors in log space so the product stays finite.
    if (w == 0.0) return 0.0;
    const double s = x * x + rho;
    const double arg = 0.25 * s * s + 0.5 * std::log(x) + std::log(std::abs(w));
    const double mag = std::exp(std::min(arg, 700.0));
    return w > 0.0 ? mag : -mag;
}

double TransformChain::w_from_u(double x, double u) const {
    const double s = x * x + rho;
    return std::exp(-0.25 * s * s) * u / std::sqrt(x);
}

TransformedEigenfunction eigenfunction_transform(const HalfLineProblem& prob,
                                                 const std::vector<double>& w) {
    if (w.size() != prob.x.size())
        throw std::invalid_argument("eigenfunction samples must match the problem grid");
    const TransformChain chain{prob.params.rho()};
    const auto [lo, hi] = tail_window(w);

    // Past the trusted window the similarity factor amplifies discretization
    // noise above the signal, so the transform stops there.
    TransformedEigenfunction out;
    out.y.reserve(hi + 1);
    out.u.reserve(hi + 1);
    for (std::size_t i = 0; i <= hi; ++i) {
        out.y.push_back(prob.x[i] * prob.x[i]);
        out.u.push_back(chain.u_from_w(prob.x[i], w[i]));
    }

    // u ~ y at the origin: the ratio u/y stays locked over the first decade of
    // the grid (a wrong boundary exponent would change it tenfold). The
    // tolerance absorbs the mild x^{3/2} pollution of the difference scheme
    // next to the singular endpoint.
    const double r0 = out.u[0] / out.y[0];
    const double r9 = out.u[9] / out.y[9];
    if (!(std::abs(r9 - r0) <= 0.15 * std::abs(r0)))
        throw invariant_violation("transformed eigenfunction does not vanish linearly at 0");

    // u tends to a constant at large y; the wrong asymptotic branch would
    // sweep through orders of magnitude here.
    double umax = 0.0, umin = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i <= hi; ++i) {
        umax = std::max(umax, std::abs(out.u[i]));
        umin = std::min(umin, std::abs(out.u[i]));
    }
    if (!(umax <= 10.0 * umin))
        throw invariant_violation("transformed eigenfunction fails to level off at large y");
    return out;
}

BoundaryDiagnostics boundary_diagnostics(const HalfLineProblem& prob,
                                         const std::vector<double>& w) {
    if (w.size() != prob.x.size())
        throw std::invalid_argument("eigenfunction samples must match the problem grid");
    if (w.size() < 16) throw std::invalid_argument("grid too short for boundary fits");
    const double rho = prob.params.rho();
    BoundaryDiagnostics diag;

    // Least-squares slope of log|w| against log x over x in [h, 10h].
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        const double lx = std::log(prob.x[i]);
        const double ly = std::log(std::abs(w[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    diag.origin_slope = (10.0 * sxy - sx * sy) / (10.0 * sxx - sx * sx);

    const auto [lo, hi] = tail_window(w);
    double cmin = std::numeric_limits<double>::infinity(), cmax = -cmin;
    double umin = std::numeric_limits<double>::infinity(), umax = 0.0;
    const TransformChain chain{rho};
    for (std::size_t i = lo; i <= hi; ++i) {
        const double s = prob.x[i] * prob.x[i] + rho;
        const double comp = std::log(std::abs(w[i])) + 0.25 * s * s + 0.5 * std::log(prob.x[i]);
        cmin = std::min(cmin, comp);
        cmax = std::max(cmax, comp);
        const double u = std::abs(chain.u_from_w(prob.x[i], w[i]));
        umin = std::min(umin, u);
        umax = std::max(umax, u);
    }
    diag.tail_spread = cmax - cmin;
    diag.u_drift = (umax - umin) / umax;
    return diag;
}

HalfLineSolution solve_halfline(const GribovParams& p, std::size_t k, double x_max,
                                std::size_t m) {
    p.require_positive();
    if (k == 0) throw std::invalid_argument("need at least one eigenvalue");

    double x_end = x_max;
    if (x_end == 0.0) {
        // Deliberate overestimate of sigma_k; the sextic wall makes the
        // endpoint insensitive to it.
        const double kk = static_cast<double>(k);
        const double guess =
            3.0 * (p.mu + std::abs(p.lambda)) * kk + (p.lambda * p.lambda / p.mu) * kk * (3.0 * kk + 1.0);
        x_end = default_x_max(p, guess);
    }

    HalfLineSolution sol;
    sol.coarse = sturm_eigenvalues(build_problem(p, x_end, m), k);
    for (std::size_t round = 0; round < 6; ++round) {
        auto fine_problem = build_problem(p, x_end, 2 * m);
        sol.fine = sturm_eigenvalues(fine_problem, k);
        const double shift =
            std::abs(sol.fine[k - 1] - sol.coarse[k - 1]) / (1.0 + std::abs(sol.fine[k - 1]));
        if (shift < 1e-7) {
            sol.extrapolated.resize(k);
            for (std::size_t j = 0; j < k; ++j)
                sol.extrapolated[j] = (4.0 * sol.fine[j] - sol.coarse[j]) / 3.0;
            sol.problem = std::move(fine_problem);
            return sol;
        }
        sol.coarse = sol.fine;
        m *= 2;
    }
    throw convergence_error("half-line eigenvalues failed to settle under grid doubling");
}

} // namespace gribov
