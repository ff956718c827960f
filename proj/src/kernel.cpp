#include "gribov/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "gribov/quadrature.hpp"

namespace gribov {

namespace {

// v_max with e^{-(c v + v^2/2)} below 1e-16 of its v = 0 value: the exponent
// must clear log(1e16) ~ 37, plus a unit of margin.
double gaussian_truncation(double c) {
    return std::sqrt(c * c + 74.0) - c + 1.0;
}

// theta(y)/y with the removable limit 1 at y -> 0-.
double theta_ratio_y(double y) { return y <= -1.0 ? -1.0 / y : 1.0; }

// s/theta(s), equal to |s| past -1.
double theta_ratio_s(double s) { return s <= -1.0 ? -s : 1.0; }

// J(t) = int_0^inf e^{-c v - v^2/2} / (t - v) dv with c = rho - t, so that
// I(t) = e^{-c^2/2} J(t). Negative, bounded by 1/(|t| c) in magnitude.
double scaled_negative_inner(double rho, double t) {
    const double c = rho - t;
    return integrate_adaptive(
        [c, t](double v) { return std::exp(-v * (c + 0.5 * v)) / (t - v); }, 0.0,
        gaussian_truncation(c));
}

double positive_integrand(double rho, double u) { return std::exp(u * (0.5 * u + rho)); }

// Exponent of the scaled negative kernel at (y, s) with min m = nodes case
// split; always <= -rho^2/2, so the kernel never overflows.
double negative_exponent(double rho, double y, double s) {
    if (s <= y) return rho * (s - y) - 0.5 * rho * rho;
    return 0.5 * (s * s - y * y) - 0.5 * rho * rho;
}

void require_negative_axis_params(const GribovParams& p) {
    if (!p.has_rho() || p.rho() <= 0.0)
        throw unsupported_parameter_error(
            "negative-axis kernel requires rho = mu/lambda > 0; the rho <= 0 "
            "representation is not implemented");
}

} // namespace

double weight_theta(double y) {
    if (y > 0.0) throw std::domain_error("theta weight lives on the negative axis");
    return y <= -1.0 ? -1.0 : y;
}

double positive_inner_integral(double rho, double t) {
    if (t == 0.0) return 0.0;
    return integrate_adaptive([rho](double u) { return positive_integrand(rho, u); }, 0.0, t);
}

double negative_inner_integral(double rho, double t) {
    if (!(t < 0.0)) throw std::domain_error("inner integral requires t < 0");
    const double c = rho - t;
    return std::exp(-0.5 * c * c) * scaled_negative_inner(rho, t);
}

double kernel_positive_axis(const GribovParams& p, double y, double s) {
    p.require_positive();
    if (y < 0.0 || s < 0.0) throw std::domain_error("positive-axis kernel requires y, s >= 0");
    if (y == 0.0) return 0.0;
    if (s == 0.0) return 1.0 / p.lambda; // series limit of F(s)/s
    const double rho = p.rho();
    const double f = positive_inner_integral(rho, std::min(y, s));
    return std::exp(-s * (0.5 * s + rho)) * f / (p.lambda * s);
}

double kernel_negative_axis(const GribovParams& p, double y, double s) {
    require_negative_axis_params(p);
    if (y > 0.0 || s > 0.0) throw std::domain_error("negative-axis kernel requires y, s <= 0");
    const double m = std::min(y, s);
    if (m == 0.0) throw std::domain_error("kernel diverges logarithmically at y = s = 0");
    const double rho = p.rho();
    return theta_ratio_y(y) * theta_ratio_s(s) * std::exp(negative_exponent(rho, y, s)) *
           scaled_negative_inner(rho, m);
}

double dominating_kernel(const GribovParams& p, double y, double s) {
    require_negative_axis_params(p);
    if (y > 0.0 || s > 0.0) throw std::domain_error("dominating kernel requires y, s <= 0");
    const double m = std::min(y, s);
    if (m == 0.0) throw std::domain_error("dominating kernel is singular at y = s = 0");
    const double rho = p.rho();
    return std::exp(-0.5 * rho * rho) * theta_ratio_y(y) * theta_ratio_s(s) / (m * (m - rho));
}

KernelGrid positive_kernel_grid(const GribovParams& p, double s_max, std::size_t panels) {
    p.require_positive();
    if (!(s_max > 0.0) || s_max > 30.0)
        throw std::invalid_argument("s_max must lie in (0, 30] to keep F(s) representable");
    if (panels == 0 || panels > 256) throw std::invalid_argument("panels must lie in [1, 256]");

    QuadratureRule rule = composite_gauss_legendre(0.0, s_max, panels);
    KernelGrid g;
    g.params = p;
    g.negative_axis = false;
    g.extent = s_max;
    g.nodes = std::move(rule.nodes);
    g.weights = std::move(rule.weights);
    g.boundaries.resize(panels + 1);
    for (std::size_t k = 0; k <= panels; ++k)
        g.boundaries[k] = s_max * static_cast<double>(k) / static_cast<double>(panels);

    const double rho = p.rho();
    const std::size_t q = g.nodes.size();
    g.inner.resize(q);
    double acc = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        acc += integrate_adaptive([rho](double u) { return positive_integrand(rho, u); }, prev,
                                  g.nodes[i]);
        g.inner[i] = acc;
        prev = g.nodes[i];
    }

    g.kernel.resize(q, q);
    for (std::size_t j = 0; j < q; ++j) {
        const double s = g.nodes[j];
        const double col = std::exp(-s * (0.5 * s + rho)) / (p.lambda * s);
        for (std::size_t i = 0; i < q; ++i) g.kernel(i, j) = col * g.inner[std::min(i, j)];
    }
    return g;
}

double default_positive_extent(const GribovParams& p) {
    p.require_positive();
    const double rho = p.rho();
    const double star = std::sqrt(rho * rho + 74.0) - rho; // envelope below 1e-16
    return std::min(30.0, std::max(10.0, star + 4.0));
}

double spectral_positive_extent(const GribovParams& p) {
    p.require_positive();
    const double rho = p.rho();
    const double star = std::sqrt(rho * rho + 52.0) - rho; // s^2/2 + rho s = 26
    return std::min(30.0, std::max(4.0, star));
}

namespace {

// nodes, weights, boundaries and the cached scaled inner integral of a
// negative-axis grid, without the q^2 kernel matrix
struct negative_rule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> boundaries;
    std::vector<double> inner;
};

negative_rule build_negative_rule(const GribovParams& p, double extent, std::size_t panels,
                                  bool with_inner = true) {
    negative_rule r;
    if (extent > 1.0) {
        // pin a boundary at -1 where theta kinks; [-1, 0] gets its panels by
        // length so that doubling `panels` doubles both segments exactly
        // whenever panels/extent is an integer
        std::size_t n_in = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(static_cast<double>(panels) / extent)));
        std::size_t n_out = std::max<std::size_t>(1, panels > n_in ? panels - n_in : 1);
        QuadratureRule outer = composite_gauss_legendre(-extent, -1.0, n_out);
        QuadratureRule inner_rule = composite_gauss_legendre(-1.0, 0.0, n_in);
        r.nodes = std::move(outer.nodes);
        r.nodes.insert(r.nodes.end(), inner_rule.nodes.begin(), inner_rule.nodes.end());
        r.weights = std::move(outer.weights);
        r.weights.insert(r.weights.end(), inner_rule.weights.begin(), inner_rule.weights.end());
        for (std::size_t k = 0; k <= n_out; ++k)
            r.boundaries.push_back(-extent + (extent - 1.0) * static_cast<double>(k) /
                                                 static_cast<double>(n_out));
        for (std::size_t k = 1; k <= n_in; ++k)
            r.boundaries.push_back(-1.0 + static_cast<double>(k) / static_cast<double>(n_in));
    } else {
        QuadratureRule rule = composite_gauss_legendre(-extent, 0.0, panels);
        r.nodes = std::move(rule.nodes);
        r.weights = std::move(rule.weights);
        for (std::size_t k = 0; k <= panels; ++k)
            r.boundaries.push_back(-extent + extent * static_cast<double>(k) /
                                                 static_cast<double>(panels));
    }
    if (with_inner) {
        const double rho = p.rho();
        const std::size_t q = r.nodes.size();
        r.inner.resize(q);
        for (std::size_t i = 0; i < q; ++i) r.inner[i] = scaled_negative_inner(rho, r.nodes[i]);
    }
    return r;
}

// |theta| weighted quadrature factors for the HS double sums
std::vector<double> hs_factors(const negative_rule& r) {
    std::vector<double> a(r.nodes.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = r.weights[i] * std::abs(weight_theta(r.nodes[i]));
    return a;
}

// HS sum of the negative-axis kernel, entries generated on the fly
double hs_stream(const negative_rule& r, double rho) {
    const std::size_t q = r.nodes.size();
    const std::vector<double> a = hs_factors(r);
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
        const double s = r.nodes[j];
        const double rs = theta_ratio_s(s);
        double colsum = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            const double y = r.nodes[i];
            const double k = theta_ratio_y(y) * rs * std::exp(negative_exponent(rho, y, s)) *
                             r.inner[std::min(i, j)];
            colsum += a[i] * k * k;
        }
        acc += a[j] * colsum;
    }
    return acc;
}

// same sum for the dominating kernel
double dom_stream(const negative_rule& r, double rho) {
    const std::size_t q = r.nodes.size();
    const std::vector<double> a = hs_factors(r);
    const double pref = std::exp(-0.5 * rho * rho);
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
        const double s = r.nodes[j];
        const double rs = theta_ratio_s(s);
        double colsum = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            const double y = r.nodes[i];
            const double m = std::min(y, s);
            const double val = pref * theta_ratio_y(y) * rs / (m * (m - rho));
            colsum += a[i] * val * val;
        }
        acc += a[j] * colsum;
    }
    return acc;
}

} // namespace

KernelGrid negative_kernel_grid(const GribovParams& p, double extent, std::size_t panels) {
    require_negative_axis_params(p);
    if (!(extent > 0.0) || extent > 64.0) throw std::invalid_argument("extent must lie in (0, 64]");
    if (panels == 0 || panels > 160) throw std::invalid_argument("panels must lie in [1, 160]");

    negative_rule r = build_negative_rule(p, extent, panels);
    KernelGrid g;
    g.params = p;
    g.negative_axis = true;
    g.extent = extent;
    g.nodes = std::move(r.nodes);
    g.weights = std::move(r.weights);
    g.boundaries = std::move(r.boundaries);
    g.inner = std::move(r.inner);

    const double rho = p.rho();
    const std::size_t q = g.nodes.size();
    g.kernel.resize(q, q);
    for (std::size_t j = 0; j < q; ++j) {
        const double s = g.nodes[j];
        const double rs = theta_ratio_s(s);
        for (std::size_t i = 0; i < q; ++i) {
            const double y = g.nodes[i];
            g.kernel(i, j) = theta_ratio_y(y) * rs * std::exp(negative_exponent(rho, y, s)) *
                             g.inner[std::min(i, j)];
        }
    }
    return g;
}

InverseApplication apply_inverse(const KernelGrid& grid, const std::vector<complex_t>& psi,
                                 double tail_tol) {
    if (grid.negative_axis) throw std::invalid_argument("apply_inverse needs the positive-axis grid");
    const std::size_t q = grid.nodes.size();
    if (psi.size() != q) throw std::invalid_argument("psi must be sampled at the grid nodes");

    const GribovParams& p = grid.params;
    const double rho = p.rho();
    const double s_edge = grid.extent;

    InverseApplication out;
    out.y = grid.boundaries;
    const std::size_t nb = out.y.size();
    out.u.assign(nb, complex_t(0.0, 0.0));

    // F at the panel boundaries (the output y-grid)
    std::vector<double> f_b(nb, 0.0);
    double acc = 0.0, prev = 0.0;
    for (std::size_t k = 1; k < nb; ++k) {
        acc += integrate_adaptive([rho](double u) { return positive_integrand(rho, u); }, prev,
                                  out.y[k]);
        f_b[k] = acc;
        prev = out.y[k];
    }

    // Tail of int_S^inf for the row at y: the kernel freezes at F(y) there,
    // and E(s) <= E(S) e^{-S(s-S)}; the factor 2 absorbs moderate polynomial
    // growth of psi past the edge. Rows approaching the edge are polluted at
    // the level of 1/S^2 no matter the mesh, so the gate covers y <= S/2.
    const double e_edge = std::exp(-s_edge * (0.5 * s_edge + rho));
    const double tail_scale = 2.0 * e_edge * std::abs(psi.back()) / (p.lambda * s_edge * s_edge);
    out.tail.resize(nb);
    out.tail_bound = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
        out.tail[k] = f_b[k] * tail_scale;
        if (out.y[k] <= 0.5 * s_edge && out.tail[k] > out.tail_bound) out.tail_bound = out.tail[k];
    }
    if (!(out.tail_bound <= tail_tol))
        throw domain_truncation_error("truncation tail bound " + std::to_string(out.tail_bound) +
                                      " exceeds tolerance; enlarge the grid extent");

    std::vector<double> col(q);
    for (std::size_t j = 0; j < q; ++j) {
        const double s = grid.nodes[j];
        col[j] = grid.weights[j] * std::exp(-s * (0.5 * s + rho)) / (p.lambda * s);
    }
    for (std::size_t k = 1; k < nb; ++k) {
        const double yk = out.y[k];
        complex_t sum(0.0, 0.0);
        for (std::size_t j = 0; j < q; ++j) {
            const double f = grid.nodes[j] <= yk ? grid.inner[j] : f_b[k];
            sum += col[j] * f * psi[j];
        }
        out.u[k] = sum;
    }
    return out;
}

std::vector<complex_t> polynomial_axis_image(const GribovParams& p,
                                             const std::vector<complex_t>& coeffs,
                                             const std::vector<double>& nodes) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial needs at least the z^1 coefficient");
    const std::size_t d = coeffs.size();
    // H z^n = mu n z^n + i lambda (n(n-1) z^{n-1} + n z^{n+1})
    std::vector<complex_t> img(d + 2, complex_t(0.0, 0.0));
    const complex_t il(0.0, p.lambda);
    for (std::size_t n = 1; n <= d; ++n) {
        const complex_t c = coeffs[n - 1];
        const double dn = static_cast<double>(n);
        img[n] += p.mu * dn * c;
        img[n - 1] += il * dn * (dn - 1.0) * c;
        img[n + 1] += il * dn * c;
    }
    std::vector<complex_t> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const complex_t zeta(0.0, -nodes[i]);
        complex_t val(0.0, 0.0);
        for (std::size_t m = img.size(); m-- > 0;) val = val * zeta + img[m];
        out[i] = val;
    }
    return out;
}

std::vector<complex_t> polynomial_axis_values(const std::vector<complex_t>& coeffs,
                                              const std::vector<double>& nodes) {
    std::vector<complex_t> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const complex_t zeta(0.0, -nodes[i]);
        complex_t val(0.0, 0.0);
        for (std::size_t m = coeffs.size(); m-- > 0;) val = val * zeta + coeffs[m];
        out[i] = val * zeta; // lowest power is z^1
    }
    return out;
}

double hs_norm_estimate(const KernelGrid& grid) {
    if (!grid.negative_axis)
        throw std::invalid_argument("the HS estimate is defined for the negative-axis kernel");
    const std::size_t q = grid.nodes.size();
    std::vector<double> a(q);
    for (std::size_t i = 0; i < q; ++i)
        a[i] = grid.weights[i] * std::abs(weight_theta(grid.nodes[i]));
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            const double k = grid.kernel(i, j);
            colsum += a[i] * k * k;
        }
        acc += a[j] * colsum;
    }
    return acc;
}

double hs_norm_dominating(const KernelGrid& grid) {
    if (!grid.negative_axis)
        throw std::invalid_argument("the HS estimate is defined for the negative-axis kernel");
    const double rho = grid.params.rho();
    const double pref = std::exp(-0.5 * rho * rho);
    const std::size_t q = grid.nodes.size();
    std::vector<double> a(q);
    for (std::size_t i = 0; i < q; ++i)
        a[i] = grid.weights[i] * std::abs(weight_theta(grid.nodes[i]));
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
        const double s = grid.nodes[j];
        const double rs = theta_ratio_s(s);
        double colsum = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            const double y = grid.nodes[i];
            const double m = std::min(y, s);
            const double val = pref * theta_ratio_y(y) * rs / (m * (m - rho));
            colsum += a[i] * val * val;
        }
        acc += a[j] * colsum;
    }
    return acc;
}

HsStudy hs_norm_study(const GribovParams& p, std::size_t levels, double base_extent,
                      std::size_t base_panels, double saturation_tol) {
    require_negative_axis_params(p);
    if (levels < 2) throw std::invalid_argument("the study needs at least two domain levels");
    const double scale = static_cast<double>(std::size_t{1} << (levels - 1));
    if (!(base_extent > 0.0) || base_extent * scale > 128.0)
        throw std::invalid_argument("the domain ladder must stay within extent 128");
    if (base_panels == 0 || std::max(static_cast<double>(base_panels) * scale,
                                     static_cast<double>(8 * base_panels)) > 512.0)
        throw std::invalid_argument("the ladders must stay within 512 panels");
    const double rho = p.rho();
    HsStudy st;

    // domain ladder at fixed panel density, so the changes isolate the tail
    double ext = base_extent;
    std::size_t pan = base_panels;
    for (std::size_t l = 0; l < levels; ++l) {
        st.extents.push_back(ext);
        st.by_extent.push_back(hs_stream(build_negative_rule(p, ext, pan), rho));
        if (l + 1 < levels) {
            ext *= 2.0;
            pan *= 2;
        }
    }
    const double last = st.by_extent[levels - 1];
    const double prev = st.by_extent[levels - 2];
    if (std::abs(last - prev) / std::abs(last) > saturation_tol) {
        const bool growing =
            levels >= 3 && (last - prev) > (st.by_extent[levels - 2] - st.by_extent[levels - 3]);
        throw convergence_error(growing
                                    ? "Hilbert-Schmidt estimate grows with the domain (divergent)"
                                    : "Hilbert-Schmidt estimate has not saturated in the domain");
    }

    // mesh ladder at the base extent (the quadrature error concentrates at
    // the diagonal kink near the corner, so its size does not depend on the
    // extent); the gate sits on the final pair
    st.panel_ladder = {base_panels, 2 * base_panels, 4 * base_panels, 8 * base_panels};
    st.by_panels = {st.by_extent[0], 0.0, 0.0, 0.0};
    for (std::size_t l = 1; l < st.panel_ladder.size(); ++l)
        st.by_panels[l] = hs_stream(build_negative_rule(p, base_extent, st.panel_ladder[l]), rho);
    const std::size_t nl = st.by_panels.size();
    const double mesh_change =
        std::abs(st.by_panels[nl - 1] - st.by_panels[nl - 2]) / std::abs(st.by_panels[nl - 1]);
    if (mesh_change > saturation_tol)
        throw convergence_error("Hilbert-Schmidt estimate has not settled under mesh refinement");

    // largest-domain value plus the mesh correction measured at the base
    // extent; the two error sources are additive to leading order
    st.value = st.by_extent[levels - 1] + (st.by_panels[nl - 1] - st.by_panels[0]);
    st.dominating = dom_stream(build_negative_rule(p, st.extents.back(), pan, false), rho);
    return st;
}

NystromResult nystrom_spectrum(const KernelGrid& grid, std::size_t k) {
    if (grid.negative_axis)
        throw std::invalid_argument("nystrom_spectrum works on the positive-axis grid");
    const std::size_t q = grid.nodes.size();
    if (k == 0 || k > q) throw std::invalid_argument("k must lie in [1, node count]");

    Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(), static_cast<Eigen::Index>(q));
    Eigen::MatrixXd a = grid.kernel * w.asDiagonal();
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw convergence_error("Nystrom eigensolve failed");

    std::vector<std::size_t> order(q);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&es](std::size_t l, std::size_t r) {
        return std::abs(es.eigenvalues()(static_cast<Eigen::Index>(l))) >
               std::abs(es.eigenvalues()(static_cast<Eigen::Index>(r)));
    });

    const complex_t lead = es.eigenvalues()(static_cast<Eigen::Index>(order[0]));
    if (!(lead.real() > 0.0) || std::abs(lead.imag()) > 1e-10 * (1.0 + std::abs(lead)))
        throw invariant_violation("Perron violation: leading kernel eigenvalue is not positive real");

    Eigen::VectorXcd v = es.eigenvectors().col(static_cast<Eigen::Index>(order[0]));
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v /= v(peak);
    if (!(v.real().minCoeff() > 0.0) || v.imag().cwiseAbs().maxCoeff() > 1e-8)
        throw invariant_violation("Perron violation: leading eigenvector is not entrywise positive");

    NystromResult out;
    out.kappa.resize(k);
    out.sigma.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        out.kappa[j] = es.eigenvalues()(static_cast<Eigen::Index>(order[j]));
        out.sigma[j] = (1.0 / out.kappa[j]).real();
    }
    out.spectral_gap =
        q > 1 ? std::abs(es.eigenvalues()(static_cast<Eigen::Index>(order[1]))) / lead.real() : 0.0;
    out.perron_vector.resize(q);
    for (std::size_t i = 0; i < q; ++i) out.perron_vector[i] = v(static_cast<Eigen::Index>(i)).real();
    return out;
}

} // namespace gribov
