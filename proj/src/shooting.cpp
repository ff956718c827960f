#include "gribov/shooting.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cfloat>
#include <cmath>
#include <limits>

#include "gribov/errors.hpp"
#include "gribov/heun.hpp"

namespace gribov {

namespace {

namespace ode = boost::numeric::odeint;
using state_t = std::array<double, 2>; // (q, c) = e^{-y^2/2 - rho y} (u, u')

struct RaySample {
    double y;
    double q;
    double c;
};

// Integrate the weighted system from eps to Y; returns (q, c) at Y.
state_t integrate_weighted(const GribovParams& p, double sigma, const ShootingConfig& cfg,
                           std::vector<RaySample>* ray) {
    p.require_positive();
    const double rho = p.rho();
    const double y_max = shooting_y_max(p, cfg);
    if (!(cfg.eps > 0.0) || cfg.eps >= y_max)
        throw std::invalid_argument("shooting needs 0 < eps < y_max");

    const auto b = frobenius_real_coefficients(p, sigma, cfg.series_order);
    double u = 0.0, up = 0.0;
    for (std::size_t n = b.size(); n-- > 0;) {
        u = b[n] + cfg.eps * u;
        up = (static_cast<double>(n) + 1.0) * b[n] + cfg.eps * up;
    }
    u *= cfg.eps;

    const double w0 = std::exp(-0.5 * cfg.eps * cfg.eps - rho * cfg.eps);
    state_t x{u * w0, up * w0};

    const double lambda = p.lambda;
    auto sys = [rho, sigma, lambda](const state_t& s, state_t& ds, double y) {
        ds[0] = s[1] - (y + rho) * s[0];
        ds[1] = -(sigma / (lambda * y)) * s[0];
    };

    try {
        if (ray && cfg.ray_samples > 0) {
            auto stepper = ode::make_dense_output<ode::runge_kutta_dopri5<state_t>>(
                cfg.abs_tol, cfg.rel_tol);
            const double dy = (y_max - cfg.eps) / static_cast<double>(cfg.ray_samples);
            ray->reserve(cfg.ray_samples + 1);
            ode::integrate_const(stepper, sys, x, cfg.eps, y_max, dy,
                                 [&](const state_t& s, double y) {
                                     ray->push_back({y, s[0], s[1]});
                                 });
        } else {
            auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<state_t>>(
                cfg.abs_tol, cfg.rel_tol);
            ode::integrate_adaptive(stepper, sys, x, cfg.eps, y_max, 1e-4);
        }
    } catch (const std::overflow_error& e) {
        throw convergence_error(std::string("ray integration stalled (stiffness): ") + e.what());
    }
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
        throw convergence_error("ray integration produced non-finite state");
    return x;
}

} // namespace

double shooting_y_max(const GribovParams& p, const ShootingConfig& cfg) {
    if (cfg.y_max > 0.0) return cfg.y_max;
    return std::max(8.0, p.rho() + 6.0);
}

double growth_indicator(const GribovParams& p, double sigma, const ShootingConfig& cfg) {
    return integrate_weighted(p, sigma, cfg, nullptr)[1];
}

ShootingResult shoot_eigenvalue(const GribovParams& p, double sigma_lo, double sigma_hi,
                                const ShootingConfig& cfg) {
    if (!(sigma_lo < sigma_hi)) throw std::invalid_argument("bracket must satisfy lo < hi");

    ShootingResult res;
    auto D = [&](double sigma) {
        const double d = growth_indicator(p, sigma, cfg);
        res.history.emplace_back(sigma, d);
        return d;
    };

    const double d_lo = D(sigma_lo);
    const double d_hi = D(sigma_hi);
    if (d_lo == 0.0 || d_hi == 0.0) {
        res.sigma = (d_lo == 0.0) ? sigma_lo : sigma_hi;
        res.converged = true;
    } else if (std::signbit(d_lo) == std::signbit(d_hi)) {
        throw no_root_error("growth indicator has equal signs at the bracket endpoints");
    } else {
        auto tol = [&](double a, double b) {
            return std::abs(b - a) <=
                   std::max(cfg.tol_sigma, 4.0 * DBL_EPSILON * std::max(std::abs(a), std::abs(b)));
        };
        std::uintmax_t iter = cfg.max_iter;
        const auto bracket =
            boost::math::tools::toms748_solve(D, sigma_lo, sigma_hi, d_lo, d_hi, tol, iter);
        res.sigma = 0.5 * (bracket.first + bracket.second);
        res.iterations = static_cast<std::size_t>(iter);
        res.converged = tol(bracket.first, bracket.second);
        if (!res.converged)
            throw convergence_error("eigenvalue bracket failed to shrink to tol_sigma");
    }

    // Final pass at the root: indicator plus the ray profile.
    std::vector<RaySample> ray;
    const state_t end = integrate_weighted(p, res.sigma, cfg, &ray);
    res.indicator = end[1];

    const double rho = p.rho();
    res.ray_y.reserve(ray.size());
    res.ray_u.reserve(ray.size());
    res.ray_up.reserve(ray.size());
    for (const auto& s : ray) {
        const double w = 0.5 * s.y * s.y + rho * s.y;
        const double scale =
            (w <= 700.0) ? std::exp(w) : std::numeric_limits<double>::quiet_NaN();
        res.ray_y.push_back(s.y);
        // u(real axis) = i phi(-i y), so the Bargmann ray value is -i times it.
        res.ray_u.push_back(complex_t{0.0, -s.q * scale});
        res.ray_up.push_back(complex_t{0.0, -s.c * scale});
    }
    return res;
}

std::vector<std::pair<double, double>> find_shooting_brackets(const GribovParams& p,
                                                              double sigma_lo, double sigma_hi,
                                                              std::size_t n_scan,
                                                              const ShootingConfig& cfg) {
    if (n_scan < 1) throw std::invalid_argument("scan needs at least one interval");
    if (!(sigma_lo < sigma_hi)) throw std::invalid_argument("scan range must satisfy lo < hi");
    std::vector<std::pair<double, double>> brackets;
    const double h = (sigma_hi - sigma_lo) / static_cast<double>(n_scan);
    double prev_sigma = sigma_lo;
    double prev_d = growth_indicator(p, prev_sigma, cfg);
    for (std::size_t i = 1; i <= n_scan; ++i) {
        const double s = sigma_lo + h * static_cast<double>(i);
        const double d = growth_indicator(p, s, cfg);
        if (prev_d == 0.0)
            brackets.emplace_back(prev_sigma, prev_sigma);
        else if (d != 0.0 && std::signbit(prev_d) != std::signbit(d))
            brackets.emplace_back(prev_sigma, s);
        prev_sigma = s;
        prev_d = d;
    }
    if (prev_d == 0.0) brackets.emplace_back(prev_sigma, prev_sigma);
    return brackets;
}

} // namespace gribov
