#include "gribov/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gribov {

namespace {

// shortest decimal that round-trips a double, for the CSV writers
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

nlohmann::json complex_json(const complex_t& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json coeffs_json(const std::vector<complex_t>& coeffs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const complex_t& c : coeffs) arr.push_back(complex_json(c));
    return arr;
}

nlohmann::json coeff_vector_json(const CoeffVector& v) { return coeffs_json(v.coeffs); }

nlohmann::json series_json(const SeriesSolution& s) {
    return {{"exponent", s.exponent},
            {"alpha_param", complex_json(s.alpha_param)},
            {"coeffs", coeffs_json(s.coeffs)},
            {"trunc", s.trunc()}};
}

nlohmann::json report_json(const SpectralReport& r) {
    nlohmann::json eigs = nlohmann::json::array();
    for (const SpectralEntry& e : r.eigenvalues)
        eigs.push_back({{"sigma", complex_json(e.sigma)},
                        {"residual", e.residual},
                        {"converged", e.converged}});
    nlohmann::json j{{"method", r.method},
                     {"mu", r.mu},
                     {"lambda", r.lambda},
                     {"resolution", r.resolution},
                     {"eigenvalues", eigs}};
    if (r.accuracy > 0.0) j["accuracy"] = r.accuracy;
    if (!r.ladder.empty()) {
        nlohmann::json sig = nlohmann::json::array();
        for (const auto& rung : r.ladder_sigmas) sig.push_back(coeffs_json(rung));
        j["convergence"] = {{"ladder", r.ladder}, {"sigmas", sig}};
    }
    return j;
}

SpectralReport report_from_jacobi(const GribovParams& p, std::size_t trunc,
                                  const std::vector<EigenPair>& pairs,
                                  const ConvergenceStudy& study) {
    SpectralReport r;
    r.method = "jacobi";
    r.mu = p.mu;
    r.lambda = p.lambda;
    r.resolution = trunc;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        SpectralEntry e;
        e.sigma = pairs[j].sigma;
        e.residual = pairs[j].residual;
        e.converged = j < study.converged.size() && study.converged[j];
        r.eigenvalues.push_back(e);
    }
    r.ladder = study.truncs;
    r.ladder_sigmas = study.sigmas;
    return r;
}

SpectralReport report_from_shooting(const GribovParams& p,
                                    const std::vector<ShootingResult>& roots) {
    SpectralReport r;
    r.method = "shooting";
    r.mu = p.mu;
    r.lambda = p.lambda;
    r.resolution = roots.empty() ? 0 : roots.front().ray_y.size();
    for (const ShootingResult& root : roots) {
        SpectralEntry e;
        e.sigma = complex_t(root.sigma, 0.0);
        e.residual = std::abs(root.indicator);
        e.converged = root.converged;
        r.eigenvalues.push_back(e);
    }
    return r;
}

SpectralReport report_from_halfline(const GribovParams& p, const HalfLineSolution& sol) {
    SpectralReport r;
    r.method = "sturm";
    r.mu = p.mu;
    r.lambda = p.lambda;
    r.resolution = sol.problem.x.size();
    for (std::size_t j = 0; j < sol.extrapolated.size(); ++j) {
        SpectralEntry e;
        e.sigma = complex_t(sol.extrapolated[j], 0.0);
        // Richardson error estimate of the extrapolated value
        e.residual = std::abs(sol.fine[j] - sol.coarse[j]) / 3.0;
        e.converged = e.residual <= 1e-7 * (1.0 + std::abs(sol.extrapolated[j]));
        r.eigenvalues.push_back(e);
    }
    return r;
}

SpectralReport report_from_nystrom(const GribovParams& p, const KernelGrid& grid,
                                   const NystromResult& res,
                                   const std::vector<double>& prev_sigma) {
    SpectralReport r;
    r.method = "kernel";
    r.mu = p.mu;
    r.lambda = p.lambda;
    r.resolution = grid.nodes.size();
    r.accuracy = 1e-4; // quadrature-limited, the coarsest of the four pipelines
    for (std::size_t j = 0; j < res.sigma.size(); ++j) {
        SpectralEntry e;
        e.sigma = complex_t(res.sigma[j], 0.0);
        if (j < prev_sigma.size()) {
            e.residual = std::abs(res.sigma[j] - prev_sigma[j]) / std::abs(res.sigma[j]);
            e.converged = e.residual <= 1e-4;
        }
        r.eigenvalues.push_back(e);
    }
    return r;
}

nlohmann::json compare_reports(const std::vector<SpectralReport>& reports, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("comparison tolerance must be positive");
    if (reports.empty()) throw std::invalid_argument("nothing to compare");

    nlohmann::json methods = nlohmann::json::array();
    std::size_t n_modes = 0;
    for (const SpectralReport& r : reports) {
        methods.push_back(r.method);
        n_modes = std::max(n_modes, r.eigenvalues.size());
    }

    nlohmann::json modes = nlohmann::json::array();
    double worst = 0.0;
    bool all_pass = true;
    std::size_t comparable_pairs = 0;
    for (std::size_t m = 0; m < n_modes; ++m) {
        nlohmann::json values = nlohmann::json::object();
        nlohmann::json converged = nlohmann::json::object();
        for (const SpectralReport& r : reports)
            if (m < r.eigenvalues.size()) {
                values[r.method] = complex_json(r.eigenvalues[m].sigma);
                converged[r.method] = r.eigenvalues[m].converged;
            }

        double mode_worst = 0.0;
        bool comparable = false;
        bool pass = true;
        for (std::size_t a = 0; a < reports.size(); ++a)
            for (std::size_t b = a + 1; b < reports.size(); ++b) {
                if (m >= reports[a].eigenvalues.size() || m >= reports[b].eigenvalues.size())
                    continue;
                const SpectralEntry& ea = reports[a].eigenvalues[m];
                const SpectralEntry& eb = reports[b].eigenvalues[m];
                if (!ea.converged || !eb.converged) continue;
                comparable = true;
                ++comparable_pairs;
                const double scale = std::max(std::abs(ea.sigma), std::abs(eb.sigma));
                const double delta = std::abs(ea.sigma - eb.sigma) / scale;
                // a coarse method is held to its own advertised accuracy
                const double pair_tol =
                    std::max({rel_tol, reports[a].accuracy, reports[b].accuracy});
                if (delta > pair_tol) pass = false;
                mode_worst = std::max(mode_worst, delta);
            }
        all_pass = all_pass && pass;
        worst = std::max(worst, mode_worst);
        modes.push_back({{"mode", m + 1},
                         {"values", values},
                         {"converged", converged},
                         {"comparable", comparable},
                         {"max_rel_delta", mode_worst},
                         {"pass", pass}});
    }

    nlohmann::json accuracy = nlohmann::json::object();
    for (const SpectralReport& r : reports)
        if (r.accuracy > 0.0) accuracy[r.method] = r.accuracy;

    return {{"mu", reports.front().mu},
            {"lambda", reports.front().lambda},
            {"tolerance", rel_tol},
            {"method_accuracy", accuracy},
            {"methods", methods},
            {"modes", modes},
            {"comparable_pairs", comparable_pairs},
            {"max_rel_delta", worst},
            {"all_pass", all_pass}};
}

std::string spectrum_csv(const SpectralReport& r) {
    std::string out = "mode,sigma_re,sigma_im,residual,converged\n";
    for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
        const SpectralEntry& e = r.eigenvalues[j];
        out += std::to_string(j + 1) + ',' + num(e.sigma.real()) + ',' + num(e.sigma.imag()) +
               ',' + num(e.residual) + ',' + (e.converged ? '1' : '0') + '\n';
    }
    return out;
}

std::string kernel_csv(const KernelGrid& g) {
    const std::size_t q = g.nodes.size();
    std::string out = "0";
    for (std::size_t j = 0; j < q; ++j) {
        out += ',';
        out += num(g.nodes[j]);
    }
    out += '\n';
    for (std::size_t i = 0; i < q; ++i) {
        out += num(g.nodes[i]);
        for (std::size_t j = 0; j < q; ++j) {
            out += ',';
            out += num(g.kernel(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string series_csv(const SeriesSolution& s) {
    std::string out = "n,re,im\n";
    for (std::size_t n = 0; n < s.coeffs.size(); ++n)
        out += std::to_string(n) + ',' + num(s.coeffs[n].real()) + ',' +
               num(s.coeffs[n].imag()) + '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path fp(path);
    if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
    std::ofstream out(fp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

} // namespace gribov
