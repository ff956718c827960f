#include "gribov/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "gribov/errors.hpp"
#include "gribov/halfline.hpp"
#include "gribov/heun.hpp"
#include "gribov/kernel.hpp"
#include "gribov/report.hpp"
#include "gribov/shooting.hpp"
#include "gribov/spectrum.hpp"

namespace gribov {

using nlohmann::json;

namespace {

GribovParams params_of(const RunConfig& cfg) { return GribovParams{cfg.mu, cfg.lambda}; }

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(const RunConfig& cfg, const std::string& name, const json& j, std::ostream& log) {
    const std::string path = out_path(cfg, name);
    write_text_file(path, j.dump(2) + "\n");
    log << "wrote " << path << "\n";
}

void emit_csv(const RunConfig& cfg, const std::string& name, const std::string& body,
              std::ostream& log) {
    const std::string path = out_path(cfg, name);
    write_text_file(path, body);
    log << "wrote " << path << "\n";
}

// The lambda := |lambda| note travels with every file so a flipped-sign run
// stays self-describing.
json stamped(const RunConfig& cfg, json j) {
    if (cfg.lambda_flipped)
        j["lambda_note"] = "lambda normalized to |lambda|; the spectrum is invariant";
    return j;
}

void log_report(std::ostream& log, const SpectralReport& r) {
    log << "[" << r.method << "] resolution " << r.resolution << ":";
    log << std::setprecision(12);
    for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
        const auto& e = r.eigenvalues[j];
        log << " sigma_" << (j + 1) << " = " << e.sigma.real();
        if (e.sigma.imag() != 0.0) log << (e.sigma.imag() < 0 ? " - " : " + ")
                                       << std::abs(e.sigma.imag()) << "i";
        log << (e.converged ? "" : " (unsettled)");
    }
    log << "\n";
}

SpectralReport run_jacobi(const RunConfig& cfg) {
    const GribovParams p = params_of(cfg);
    const std::size_t trunc = std::max(cfg.trunc, cfg.k + 2);
    std::size_t lo = std::max(trunc / 2, cfg.k + 2);
    if (lo >= trunc) lo = trunc; // tiny truncations: stability rung above instead
    const std::vector<std::size_t> ladder =
        lo < trunc ? std::vector<std::size_t>{lo, trunc}
                   : std::vector<std::size_t>{trunc, trunc + 16};
    const auto study = convergence_study(p, cfg.k, ladder);
    const auto pairs = eigen_spectrum(p, ladder.back(), cfg.k);
    return report_from_jacobi(p, ladder.back(), pairs, study);
}

SpectralReport run_shooting(const RunConfig& cfg) {
    const GribovParams p = params_of(cfg);
    p.require_positive();
    const double scale = std::max(1.0, p.mu);
    double hi = 4.0 * scale;
    std::size_t scan = 32 * cfg.k;
    std::vector<std::pair<double, double>> brackets;
    for (;;) {
        brackets = find_shooting_brackets(p, 1e-2 * scale, hi, scan);
        if (brackets.size() >= cfg.k) break;
        if (hi > 1e4 * scale)
            throw convergence_error("shooting found only " + std::to_string(brackets.size()) +
                                    " brackets below sigma = " + std::to_string(hi));
        hi *= 2.0;
        scan *= 2;
    }
    brackets.resize(cfg.k);
    std::vector<ShootingResult> roots;
    roots.reserve(cfg.k);
    for (const auto& b : brackets) roots.push_back(shoot_eigenvalue(p, b.first, b.second));
    return report_from_shooting(p, roots);
}

SpectralReport run_sturm(const RunConfig& cfg) {
    const GribovParams p = params_of(cfg);
    const std::size_t m = cfg.grid ? cfg.grid : 4000;
    return report_from_halfline(p, solve_halfline(p, cfg.k, 0.0, m));
}

// Doubled-grid pair: the fine run is reported, the coarse one supplies the
// stability shift behind each converged flag.
SpectralReport run_nystrom(const RunConfig& cfg, NystromResult* fine_out = nullptr,
                           KernelGrid* grid_out = nullptr) {
    const GribovParams p = params_of(cfg);
    const std::size_t panels = cfg.grid ? cfg.grid : 21;
    const double s_max = spectral_positive_extent(p);
    const KernelGrid coarse = positive_kernel_grid(p, s_max, panels);
    KernelGrid fine = positive_kernel_grid(p, s_max, 2 * panels);
    const std::size_t kk = std::min<std::size_t>(cfg.k, 6);
    const NystromResult rc = nystrom_spectrum(coarse, kk);
    NystromResult rf = nystrom_spectrum(fine, kk);
    SpectralReport rep = report_from_nystrom(p, fine, rf, rc.sigma);
    if (fine_out) *fine_out = std::move(rf);
    if (grid_out) *grid_out = std::move(fine);
    return rep;
}

SpectralReport run_method(const RunConfig& cfg, const std::string& method) {
    if (method == "jacobi") return run_jacobi(cfg);
    if (method == "shooting") return run_shooting(cfg);
    if (method == "sturm") return run_sturm(cfg);
    return run_nystrom(cfg);
}

// Methods execute sequentially; report assembly is the final step.
int cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
    std::vector<SpectralReport> reports;
    for (const auto& m : cfg.methods) {
        reports.push_back(run_method(cfg, m));
        const SpectralReport& r = reports.back();
        log_report(log, r);
        emit(cfg, "spectrum_" + m + ".json", stamped(cfg, report_json(r)), log);
        if (cfg.format == "csv") emit_csv(cfg, "spectrum_" + m + ".csv", spectrum_csv(r), log);
    }
    if (reports.size() < 2) return 0;
    const json cmp = compare_reports(reports, cfg.tol_compare);
    emit(cfg, "comparison.json", stamped(cfg, cmp), log);
    const bool pass = cmp.at("all_pass").get<bool>();
    log << "comparison: " << cmp.at("comparable_pairs").get<std::size_t>()
        << " comparable pairs, max rel delta " << cmp.at("max_rel_delta").get<double>()
        << " against " << cfg.tol_compare << (pass ? " -> pass" : " -> FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_series(const RunConfig& cfg, std::ostream& log) {
    const GribovParams p = params_of(cfg);
    const SeriesSolution s =
        frobenius_coefficients(p, complex_t(cfg.sigma, 0.0), cfg.order);
    json j = series_json(s);
    j["mu"] = cfg.mu;
    j["lambda"] = cfg.lambda;
    j["sigma"] = complex_json(complex_t(cfg.sigma, 0.0));
    log << "[series] sigma = " << cfg.sigma << ": " << s.coeffs.size()
        << " analytic-branch coefficients, indicial exponent " << s.exponent << "\n";
    emit(cfg, "series.json", stamped(cfg, j), log);
    if (cfg.format == "csv") emit_csv(cfg, "series.csv", series_csv(s), log);
    return 0;
}

// Kernel-module diagnostics beyond the eigenvalues: spectral gap, inverse
// identity on q(z) = z, and the Hilbert-Schmidt bound with its dominating
// closed form. Shared by the kernel and report subcommands.
int kernel_block(const RunConfig& cfg, const SpectralReport& rep, const NystromResult& ny,
                 const KernelGrid& grid, std::ostream& log) {
    const GribovParams p = params_of(cfg);
    json j = report_json(rep);
    j["spectral_gap"] = ny.spectral_gap;
    json kap = json::array();
    for (const auto& kv : ny.kappa) kap.push_back(complex_json(kv));
    j["kappa"] = kap;

    // Applying the inverse to the axis image of H q must reproduce q on the
    // certified window. The identity needs the wide extent (certified window
    // extent/2), not the tight one tuned for the eigensolve above.
    const std::size_t panels = cfg.grid ? cfg.grid : 21;
    const KernelGrid wide = positive_kernel_grid(p, default_positive_extent(p), panels);
    const std::vector<complex_t> q{complex_t(1.0, 0.0)}; // coeffs start at z^1
    const InverseApplication inv =
        apply_inverse(wide, polynomial_axis_image(p, q, wide.nodes), cfg.tol_tail);
    const std::vector<complex_t> want = polynomial_axis_values(q, inv.y);
    double inv_err = 0.0;
    for (std::size_t i = 0; i < inv.y.size(); ++i) {
        if (inv.y[i] <= 0.0 || inv.y[i] > wide.extent / 2.0) continue;
        inv_err = std::max(inv_err, std::abs(inv.u[i] - want[i]) / std::abs(want[i]));
    }
    const bool inv_pass = inv_err <= 1e-6;
    j["inverse_identity"] = {{"max_rel_err", inv_err},
                             {"tol", 1e-6},
                             {"extent", wide.extent},
                             {"pass", inv_pass}};
    log << "[kernel] inverse identity on q = z: max rel err " << inv_err
        << (inv_pass ? " -> pass" : " -> FAIL") << "\n";

    const HsStudy st = hs_norm_study(p);
    const bool hs_pass = st.value < st.dominating;
    j["hs_norm"] = {{"value", st.value},          {"dominating", st.dominating},
                    {"extents", st.extents},      {"by_extent", st.by_extent},
                    {"panel_ladder", st.panel_ladder}, {"by_panels", st.by_panels},
                    {"pass", hs_pass}};
    log << "[kernel] hs norm estimate " << st.value << " dominated by " << st.dominating
        << (hs_pass ? " -> pass" : " -> FAIL") << "\n";

    emit(cfg, "kernel.json", stamped(cfg, j), log);
    if (cfg.format == "csv") emit_csv(cfg, "kernel_matrix.csv", kernel_csv(grid), log);
    return (inv_pass && hs_pass) ? 0 : 1;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& log) {
    NystromResult ny;
    KernelGrid grid; // the fine (doubled) grid
    const SpectralReport rep = run_nystrom(cfg, &ny, &grid);
    log_report(log, rep);
    return kernel_block(cfg, rep, ny, grid, log);
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
    const GribovParams p = params_of(cfg);
    p.require_positive(); // the suite includes positivity-dependent checks
    json checks = json::array();
    bool all_pass = true;
    const auto record = [&](const std::string& name, double value, double tol, bool pass) {
        checks.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
        all_pass = all_pass && pass;
        log << "[validate] " << name << " = " << value << (pass ? " -> pass" : " -> FAIL")
            << "\n";
    };

    // Spectrum-side invariants on the converged part of a 40-mode solve.
    const std::size_t trunc = std::max<std::size_t>(cfg.trunc, 128);
    const std::size_t k_suite = 40;
    const auto pairs = eigen_spectrum(p, trunc, k_suite);
    const auto study = convergence_study(p, k_suite, {trunc / 2, trunc});
    std::vector<EigenPair> settled;
    for (std::size_t j = 0; j < k_suite; ++j)
        if (study.converged[j]) settled.push_back(pairs[j]);
    if (settled.empty())
        throw convergence_error("no eigenvalue settled at truncation " + std::to_string(trunc));

    record("reality_imag_ratio", max_imag_ratio(settled), 1e-8,
           max_imag_ratio(settled) <= 1e-8);
    const double margin = min_real_part(settled) - std::abs(p.mu);
    record("lower_bound_margin", margin, 1e-8, margin >= -1e-8);

    // Bilinear Gram matrix of the first 8 modes: diagonal resolvable,
    // off-diagonal at solver noise.
    const std::vector<EigenPair> head(pairs.begin(),
                                      pairs.begin() + std::min<std::size_t>(8, pairs.size()));
    const auto g = biorthogonality_matrix(head);
    double off = 0.0;
    for (Eigen::Index a = 0; a < g.rows(); ++a)
        for (Eigen::Index b = 0; b < g.cols(); ++b)
            if (a != b) off = std::max(off, std::abs(g(a, b)));
    record("biorthogonality_offdiag", off, 1e-8, off <= 1e-8);

    // Least-squares completeness: distance of e_1 + e_2 to the eigenspan.
    CoeffVector target;
    target.coeffs.assign(trunc, complex_t{0.0, 0.0});
    target.coeffs[1] = 1.0;
    target.coeffs[2] = 1.0;
    const auto comp = completeness_residual(pairs, target, k_suite);
    const double best = *std::min_element(comp.best_fit.begin(), comp.best_fit.end());
    record("completeness_best_fit", best, 1e-6, best <= 1e-6);

    // Kernel positivity and domination, entrywise on desk-scale grids.
    const KernelGrid pos = positive_kernel_grid(p, default_positive_extent(p), 14);
    std::size_t viol = 0;
    for (Eigen::Index a = 0; a < pos.kernel.rows(); ++a)
        for (Eigen::Index b = 0; b < pos.kernel.cols(); ++b)
            if (pos.kernel(a, b) < 0.0) ++viol;
    record("positive_kernel_negative_entries", double(viol), 0.0, viol == 0);

    const KernelGrid neg = negative_kernel_grid(p, 12.0, 24);
    std::size_t sign_viol = 0, dom_viol = 0;
    for (Eigen::Index a = 0; a < neg.kernel.rows(); ++a)
        for (Eigen::Index b = 0; b < neg.kernel.cols(); ++b) {
            const double kv = neg.kernel(a, b);
            if (kv > 0.0) ++sign_viol;
            const double dom = dominating_kernel(p, neg.nodes[a], neg.nodes[b]);
            if (std::abs(kv) > dom * (1.0 + 1e-12)) ++dom_viol;
        }
    record("negative_kernel_sign_violations", double(sign_viol), 0.0, sign_viol == 0);
    record("negative_kernel_domination_violations", double(dom_viol), 0.0, dom_viol == 0);

    json j{{"mu", cfg.mu}, {"lambda", cfg.lambda}, {"trunc", trunc},
           {"settled_modes", settled.size()}, {"checks", checks}, {"all_pass", all_pass}};
    emit(cfg, "validate.json", stamped(cfg, j), log);
    return all_pass ? 0 : 1;
}

// Full cross-validation: all four pipelines, the kernel diagnostics (reusing
// the one Nystrom doubling pair), and the invariant suite.
int cmd_report(const RunConfig& cfg, std::ostream& log) {
    std::vector<SpectralReport> reports;
    NystromResult ny;
    KernelGrid grid;
    for (const std::string m : {"jacobi", "shooting", "sturm", "kernel"}) {
        reports.push_back(m == "kernel" ? run_nystrom(cfg, &ny, &grid) : run_method(cfg, m));
        log_report(log, reports.back());
        emit(cfg, "spectrum_" + m + ".json", stamped(cfg, report_json(reports.back())), log);
        if (cfg.format == "csv")
            emit_csv(cfg, "spectrum_" + m + ".csv", spectrum_csv(reports.back()), log);
    }
    const json cmp = compare_reports(reports, cfg.tol_compare);
    emit(cfg, "comparison.json", stamped(cfg, cmp), log);
    const int spectrum_rc = cmp.at("all_pass").get<bool>() ? 0 : 1;
    const int kernel_rc = kernel_block(cfg, reports.back(), ny, grid, log);
    const int validate_rc = cmd_validate(cfg, log);
    const bool pass = spectrum_rc == 0 && kernel_rc == 0 && validate_rc == 0;
    const json j{{"spectrum_pass", spectrum_rc == 0},
                 {"kernel_pass", kernel_rc == 0},
                 {"validate_pass", validate_rc == 0},
                 {"all_pass", pass}};
    emit(cfg, "report.json", stamped(cfg, j), log);
    return pass ? 0 : 1;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        try {
            if (key == "mu") cfg.mu = it->get<double>();
            else if (key == "lambda") cfg.lambda = it->get<double>();
            else if (key == "k") cfg.k = it->get<std::size_t>();
            else if (key == "methods") cfg.methods = it->get<std::vector<std::string>>();
            else if (key == "trunc") cfg.trunc = it->get<std::size_t>();
            else if (key == "grid") cfg.grid = it->get<std::size_t>();
            else if (key == "out") cfg.out_dir = it->get<std::string>();
            else if (key == "format") cfg.format = it->get<std::string>();
            else if (key == "tol-compare") cfg.tol_compare = it->get<double>();
            else if (key == "tol-residual") cfg.tol_residual = it->get<double>();
            else if (key == "tol-tail") cfg.tol_tail = it->get<double>();
            else if (key == "sigma") cfg.sigma = it->get<double>();
            else if (key == "order") cfg.order = it->get<std::size_t>();
            else throw std::invalid_argument("unknown config key: " + key);
        } catch (const json::exception& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        }
    }
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path,
                      std::string& methods_csv) {
    cmd->add_option("--config", config_path, "JSON config file mirroring the long flags");
    cmd->add_option("--mu", cfg.mu, "linear coupling mu");
    cmd->add_option("--lambda", cfg.lambda, "cubic coupling lambda (sign is normalized away)");
    cmd->add_option("--k", cfg.k, "number of eigenvalues");
    cmd->add_option("--methods", methods_csv,
                    "comma-separated subset of jacobi,shooting,sturm,kernel");
    cmd->add_option("--trunc", cfg.trunc, "Bargmann truncation order");
    cmd->add_option("--grid", cfg.grid, "mesh size (sturm points / kernel panels); 0 = default");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--format", cfg.format, "json or csv (csv adds plot tables)");
    cmd->add_option("--tol-compare", cfg.tol_compare, "cross-method agreement tolerance");
    cmd->add_option("--tol-residual", cfg.tol_residual, "eigenpair residual tolerance");
    cmd->add_option("--tol-tail", cfg.tol_tail, "quadrature tail-bound tolerance");
    cmd->add_option("--sigma", cfg.sigma, "series expansion point (series subcommand)");
    cmd->add_option("--order", cfg.order, "series truncation order (series subcommand)");
}

} // namespace

RunConfig parse_cli(int argc, const char* const* argv) {
    // First pass: locate --config so file values load before flag overrides;
    // CLI11 only writes bound variables when the flag is actually present.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);

    CLI::App app{"spectral toolkit for the Gribov Hamiltonian in Bargmann space"};
    app.require_subcommand(1);
    std::string config_dummy;
    std::string methods_csv;
    for (const auto& name : {"spectrum", "series", "kernel", "validate", "report"}) {
        CLI::App* cmd = app.add_subcommand(name, "");
        add_common_flags(cmd, cfg, config_dummy, methods_csv);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            throw help_requested{app.help("", CLI::AppFormatMode::All)};
        throw std::invalid_argument(e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!methods_csv.empty()) {
        cfg.methods.clear();
        std::stringstream ss(methods_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) cfg.methods.push_back(tok);
    }
    normalize_config(cfg);
    return cfg;
}

void normalize_config(RunConfig& cfg) {
    if (cfg.lambda < 0.0) {
        cfg.lambda = -cfg.lambda;
        cfg.lambda_flipped = true;
    }
    if (!(cfg.tol_compare > 0.0) || !(cfg.tol_residual > 0.0) || !(cfg.tol_tail > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (cfg.k == 0) throw std::invalid_argument("k must be at least 1");
    if (cfg.methods.empty()) throw std::invalid_argument("methods must be nonempty");
    static const std::set<std::string> known{"jacobi", "shooting", "sturm", "kernel"};
    std::vector<std::string> deduped;
    for (const auto& m : cfg.methods) {
        if (!known.count(m)) throw std::invalid_argument("unknown method: " + m);
        if (std::find(deduped.begin(), deduped.end(), m) == deduped.end())
            deduped.push_back(m);
    }
    cfg.methods = std::move(deduped);
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument("format must be json or csv");
    // sturm meshes (>= 100 points) and kernel panel counts (<= 128) live on
    // different scales; one --grid value cannot serve both in a single run.
    const auto has = [&](const char* m) {
        return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
    };
    const bool both_grids = has("sturm") && has("kernel");
    if (cfg.grid != 0 &&
        (cfg.command == "report" || (cfg.command == "spectrum" && both_grids)))
        throw std::invalid_argument(
            "--grid is ambiguous when a run spans both sturm and kernel; "
            "use the per-method defaults (grid 0) or run the methods separately");
}

int run(const RunConfig& cfg_in, std::ostream& log) {
    RunConfig cfg = cfg_in; // hand-built configs get the same normalization
    normalize_config(cfg);
    if (cfg.lambda_flipped)
        log << "note: lambda normalized to " << cfg.lambda
            << " (spectrum invariant under the sign flip)\n";
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, log);
    if (cfg.command == "series") return cmd_series(cfg, log);
    if (cfg.command == "kernel") return cmd_kernel(cfg, log);
    if (cfg.command == "validate") return cmd_validate(cfg, log);
    if (cfg.command == "report") return cmd_report(cfg, log);
    throw std::invalid_argument("unknown subcommand: " + cfg.command);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const invariant_violation*>(&e)) return 1;
    if (dynamic_cast<const convergence_error*>(&e)) return 3;
    if (dynamic_cast<const domain_truncation_error*>(&e)) return 3;
    if (dynamic_cast<const no_root_error*>(&e)) return 3;
    return 2; // invalid_argument, domain_error, io failures: configuration
}

std::string error_kind(const std::exception& e) {
    switch (exit_code_for(e)) {
        case 1: return "invariant_failure";
        case 3: return "non_convergence";
        default: return "configuration_error";
    }
}

} // namespace gribov
