#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gribov/cli.hpp"
#include "gribov/errors.hpp"
#include "gribov/kernel.hpp"
#include "gribov/shooting.hpp"

using namespace gribov;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"gribov"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_cli(int(argv.size()), argv.data());
}

json slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing file: " + path);
    return json::parse(in);
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// output directory scoped to one test case
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::path("cli_test_out") / name) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all("cli_test_out"); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("flags parse with defaults and overrides") {
    const RunConfig cfg = parse({"spectrum", "--mu", "3", "--lambda", "0", "--methods",
                                 "jacobi,sturm", "--k", "3", "--trunc", "32"});
    CHECK(cfg.command == "spectrum");
    CHECK(cfg.mu == 3.0);
    CHECK(cfg.lambda == 0.0);
    CHECK(cfg.k == 3);
    CHECK(cfg.trunc == 32);
    CHECK(cfg.methods == std::vector<std::string>{"jacobi", "sturm"});
    CHECK(cfg.grid == 0);
    CHECK(cfg.format == "json");
    CHECK(cfg.tol_compare == 1e-6);

    const RunConfig ser = parse({"series", "--sigma", "1.5", "--order", "12"});
    CHECK(ser.command == "series");
    CHECK(ser.sigma == 1.5);
    CHECK(ser.order == 12);
}

TEST_CASE("config file loads and explicit flags override it") {
    TempDir dir("config");
    const std::string path = dir.file("run.json");
    {
        std::ofstream out(path);
        out << R"({"mu": 2.0, "k": 7, "methods": ["shooting"], "tol-compare": 1e-5})";
    }
    const RunConfig cfg = parse({"spectrum", "--config", path, "--k", "3"});
    CHECK(cfg.mu == 2.0);              // from file
    CHECK(cfg.k == 3);                 // flag wins
    CHECK(cfg.tol_compare == 1e-5);    // from file
    CHECK(cfg.methods == std::vector<std::string>{"shooting"});

    {
        std::ofstream out(path);
        out << R"({"mu": 2.0, "verbosity": 3})";
    }
    CHECK_THROWS_AS(parse({"spectrum", "--config", path}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"spectrum", "--config", dir.file("absent.json")}),
                    std::invalid_argument);
}

TEST_CASE("lambda sign is normalized away at ingestion") {
    const RunConfig cfg = parse({"spectrum", "--mu", "1", "--lambda", "-0.5"});
    CHECK(cfg.lambda == 0.5);
    CHECK(cfg.lambda_flipped);
}

TEST_CASE("bad usage is rejected as a configuration error") {
    CHECK_THROWS_AS(parse({"spectrum", "--methods", "magic"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"spectrum", "--tol-compare", "0"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"spectrum", "--k", "0"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"spectrum", "--format", "xml"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"fling"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({}), std::invalid_argument);
    // one --grid cannot drive both the sturm mesh and the kernel panels
    CHECK_THROWS_AS(parse({"spectrum", "--methods", "sturm,kernel", "--grid", "50"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse({"report", "--grid", "7"}), std::invalid_argument);

    TempDir dir("badcfg");
    {
        std::ofstream out(dir.file("m.json"));
        out << R"({"methods": []})";
    }
    CHECK_THROWS_AS(parse({"spectrum", "--config", dir.file("m.json")}),
                    std::invalid_argument);
}

TEST_CASE("help is routed out of band") {
    CHECK_THROWS_AS(parse({"--help"}), help_requested);
    try {
        parse({"--help"});
    } catch (const help_requested& h) {
        CHECK(h.text.find("spectrum") != std::string::npos);
        CHECK(h.text.find("validate") != std::string::npos);
    }
}

TEST_CASE("exit codes follow the documented taxonomy") {
    CHECK(exit_code_for(invariant_violation("x")) == 1);
    CHECK(exit_code_for(convergence_error("x")) == 3);
    CHECK(exit_code_for(domain_truncation_error("x")) == 3);
    CHECK(exit_code_for(no_root_error("x")) == 3);
    CHECK(exit_code_for(std::invalid_argument("x")) == 2);
    CHECK(exit_code_for(unsupported_parameter_error("x")) == 2);
    CHECK(exit_code_for(std::runtime_error("x")) == 2);
    CHECK(error_kind(invariant_violation("x")) == "invariant_failure");
    CHECK(error_kind(convergence_error("x")) == "non_convergence");
    CHECK(error_kind(std::invalid_argument("x")) == "configuration_error");
}

TEST_CASE("spectrum at lambda 0 reproduces the exact ladder") {
    TempDir dir("exact");
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.mu = 3.0;
    cfg.lambda = 0.0;
    cfg.methods = {"jacobi"};
    cfg.k = 3;
    cfg.trunc = 16;
    cfg.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const json j = slurp(dir.file("spectrum_jacobi.json"));
    REQUIRE(j["eigenvalues"].size() == 3);
    for (std::size_t n = 0; n < 3; ++n) {
        CHECK(j["eigenvalues"][n]["sigma"][0].get<double>() ==
              doctest::Approx(3.0 * double(n + 1)).epsilon(1e-14));
        CHECK(j["eigenvalues"][n]["sigma"][1].get<double>() == 0.0);
        CHECK(j["eigenvalues"][n]["converged"] == true);
    }
}

TEST_CASE("two-method spectrum run emits a passing comparison") {
    TempDir dir("pair");
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.mu = 1.0;
    cfg.lambda = 0.5;
    cfg.methods = {"jacobi", "sturm"};
    cfg.k = 3;
    cfg.trunc = 256;
    cfg.out_dir = dir.path.string();
    cfg.format = "csv";
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const json cmp = slurp(dir.file("comparison.json"));
    CHECK(cmp["all_pass"] == true);
    CHECK(cmp["comparable_pairs"].get<std::size_t>() >= 1);
    CHECK(cmp["max_rel_delta"].get<double>() <= 1e-6);
    CHECK(fs::exists(dir.file("spectrum_jacobi.csv")));
    CHECK(fs::exists(dir.file("spectrum_sturm.csv")));

    // an unreachable tolerance flips the outcome to exit code 1
    cfg.tol_compare = 1e-15;
    std::ostringstream log2;
    CHECK(run(cfg, log2) == 1);
}

TEST_CASE("series subcommand writes the analytic branch") {
    TempDir dir("series");
    RunConfig cfg;
    cfg.command = "series";
    cfg.mu = 1.0;
    cfg.lambda = 0.5;
    cfg.sigma = 1.3177;
    cfg.order = 16;
    cfg.format = "csv";
    cfg.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const json j = slurp(dir.file("series.json"));
    CHECK(j["trunc"] == 16);
    CHECK(j["coeffs"].size() == 17);
    CHECK(j["exponent"] == 1.0);
    CHECK(j["sigma"] == json::array({1.3177, 0.0}));
    std::istringstream csv(read_bytes(dir.file("series.csv")));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 18); // header + 17 coefficients
}

TEST_CASE("kernel subcommand certifies the inverse identity and hs bound") {
    TempDir dir("kernel");
    RunConfig cfg;
    cfg.command = "kernel";
    cfg.mu = 1.0;
    cfg.lambda = 0.5;
    cfg.k = 2;
    cfg.grid = 7; // doubled to 14 panels for the reported run
    cfg.format = "csv";
    cfg.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const json j = slurp(dir.file("kernel.json"));
    CHECK(j["method"] == "kernel");
    CHECK(j["resolution"] == 448);
    CHECK(j["accuracy"].get<double>() == 1e-4);
    CHECK(j["inverse_identity"]["pass"] == true);
    CHECK(j["inverse_identity"]["max_rel_err"].get<double>() <= 1e-6);
    CHECK(j["hs_norm"]["pass"] == true);
    CHECK(j["hs_norm"]["value"].get<double>() ==
          doctest::Approx(0.000717173).epsilon(1e-3));
    CHECK(j["spectral_gap"].get<double>() > 0.0);
    CHECK(j["spectral_gap"].get<double>() < 1.0);
    std::istringstream csv(read_bytes(dir.file("kernel_matrix.csv")));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 449); // border row + 448 node rows
}

TEST_CASE("validate subcommand passes the invariant suite") {
    TempDir dir("validate");
    RunConfig cfg;
    cfg.command = "validate";
    cfg.mu = 1.0;
    cfg.lambda = 0.5;
    cfg.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const json j = slurp(dir.file("validate.json"));
    CHECK(j["all_pass"] == true);
    REQUIRE(j["checks"].size() == 7);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
    CHECK(j["settled_modes"].get<std::size_t>() >= 3); // truncation doubling is strict

    // negative couplings are rejected before any numerics run
    cfg.mu = -1.0;
    std::ostringstream log2;
    CHECK_THROWS_AS(run(cfg, log2), std::invalid_argument);
}

TEST_CASE("report subcommand cross-validates all four pipelines") {
    TempDir dir("report");
    RunConfig cfg;
    cfg.command = "report";
    cfg.mu = 1.0;
    cfg.lambda = 0.5;
    cfg.k = 2;
    cfg.trunc = 192;
    cfg.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const json j = slurp(dir.file("report.json"));
    CHECK(j["spectrum_pass"] == true);
    CHECK(j["kernel_pass"] == true);
    CHECK(j["validate_pass"] == true);
    CHECK(j["all_pass"] == true);
    const json cmp = slurp(dir.file("comparison.json"));
    CHECK(cmp["methods"].size() == 4);
    CHECK(cmp["comparable_pairs"].get<std::size_t>() >= 6);
    CHECK(cmp["method_accuracy"]["kernel"].get<double>() == 1e-4);
    // mode 1 is comparable across all four, kernel held to its own accuracy
    CHECK(cmp["modes"][0]["comparable"] == true);
    CHECK(cmp["modes"][0]["pass"] == true);
    for (const std::string m : {"jacobi", "shooting", "sturm", "kernel"})
        CHECK(fs::exists(dir.file("spectrum_" + m + ".json")));
}

TEST_CASE("reports are byte-identical across reruns") {
    TempDir dir("repro");
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.mu = 1.0;
    cfg.lambda = 0.5;
    cfg.methods = {"jacobi"};
    cfg.k = 2;
    cfg.trunc = 64;
    cfg.out_dir = (dir.path / "a").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == 0);
    cfg.out_dir = (dir.path / "b").string();
    REQUIRE(run(cfg, log) == 0);
    CHECK(read_bytes((dir.path / "a" / "spectrum_jacobi.json").string()) ==
          read_bytes((dir.path / "b" / "spectrum_jacobi.json").string()));
}

} // TEST_SUITE
