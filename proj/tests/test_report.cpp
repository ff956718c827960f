#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "gribov/report.hpp"
#include "gribov/spectrum.hpp"

using namespace gribov;
using nlohmann::json;

namespace {

SpectralReport synthetic(const std::string& method, const std::vector<double>& sigmas,
                         const std::vector<bool>& flags) {
    SpectralReport r;
    r.method = method;
    r.mu = 1.0;
    r.lambda = 0.5;
    r.resolution = 64;
    for (std::size_t j = 0; j < sigmas.size(); ++j) {
        SpectralEntry e;
        e.sigma = complex_t(sigmas[j], 0.0);
        e.residual = 1e-12;
        e.converged = flags[j];
        r.eigenvalues.push_back(e);
    }
    return r;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("complex values serialize as [re, im] pairs") {
    CHECK(complex_json(complex_t(2.0, -3.0)) == json::array({2.0, -3.0}));
    CHECK(coeff_vector_json(CoeffVector::basis(1, 3)) ==
          json::array({{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}));
}

TEST_CASE("series serialization carries exponent, branch parameter, coefficients") {
    SeriesSolution s;
    s.exponent = 1.0;
    s.alpha_param = complex_t(0.0, 0.5);
    s.coeffs = {complex_t(1.0, 0.0), complex_t(0.0, -0.25)};
    const json j = series_json(s);
    CHECK(j["exponent"] == 1.0);
    CHECK(j["alpha_param"] == json::array({0.0, 0.5}));
    CHECK(j["coeffs"].size() == 2);
    CHECK(j["coeffs"][1] == json::array({0.0, -0.25}));
    CHECK(j["trunc"] == 1);

    const std::string csv = series_csv(s);
    CHECK(csv == "n,re,im\n0,1,0\n1,0,-0.25\n");
}

TEST_CASE("report json round-trips values exactly and is deterministic") {
    SpectralReport r = synthetic("jacobi", {1.3177075503, 3.3095882611}, {true, false});
    r.ladder = {32, 64};
    r.ladder_sigmas = {{complex_t(1.31, 0.0)}, {complex_t(1.3177, 0.0)}};

    const json j = report_json(r);
    const std::string dumped = j.dump(2);
    CHECK(dumped == report_json(r).dump(2)); // bit-for-bit reproducible

    const json back = json::parse(dumped);
    CHECK(back["method"] == "jacobi");
    CHECK(back["mu"].get<double>() == 1.0);
    CHECK(back["eigenvalues"][0]["sigma"][0].get<double>() == 1.3177075503);
    CHECK(back["eigenvalues"][0]["converged"] == true);
    CHECK(back["eigenvalues"][1]["converged"] == false);
    CHECK(back["convergence"]["ladder"] == json::array({32, 64}));

    SpectralReport bare = synthetic("shooting", {1.0}, {true});
    CHECK(!report_json(bare).contains("convergence"));
}

TEST_CASE("jacobi adapter copies study flags and ladder") {
    const GribovParams p{1.0, 0.05};
    const auto pairs = eigen_spectrum(p, 48, 3);
    const auto study = convergence_study(p, 3, {24, 48});
    const SpectralReport r = report_from_jacobi(p, 48, pairs, study);
    CHECK(r.method == "jacobi");
    CHECK(r.resolution == 48);
    REQUIRE(r.eigenvalues.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(r.eigenvalues[j].sigma == pairs[j].sigma);
        CHECK(r.eigenvalues[j].converged == study.converged[j]);
    }
    CHECK(r.ladder == std::vector<std::size_t>{24, 48});
    CHECK(r.ladder_sigmas.size() == 2);
}

TEST_CASE("halfline and nystrom adapters derive flags from shifts") {
    HalfLineSolution sol;
    sol.coarse = {1.0 + 3e-7, 2.0 + 3e-3};
    sol.fine = {1.0, 2.0};
    sol.extrapolated = {1.0 - 1e-7, 2.0 - 1e-3};
    sol.problem.x = std::vector<double>(500, 0.0);
    const SpectralReport hr = report_from_halfline(GribovParams{1.0, 0.5}, sol);
    CHECK(hr.method == "sturm");
    CHECK(hr.resolution == 500);
    CHECK(hr.eigenvalues[0].converged);       // shift 1e-7 within gate
    CHECK(!hr.eigenvalues[1].converged);      // shift 1e-3 beyond gate
    CHECK(hr.eigenvalues[0].residual == doctest::Approx(1e-7).epsilon(1e-6));

    const GribovParams p{1.0, 0.5};
    const KernelGrid g = positive_kernel_grid(p, 5.0, 2);
    NystromResult ny;
    ny.sigma = {1.3176, 3.31};
    const SpectralReport kr = report_from_nystrom(p, g, ny, {1.31761});
    CHECK(kr.method == "kernel");
    CHECK(kr.resolution == 64);
    CHECK(kr.eigenvalues[0].converged);       // doubling shift ~8e-6
    CHECK(!kr.eigenvalues[1].converged);      // no previous value to compare
    CHECK(kr.eigenvalues[1].residual == 0.0);
}

TEST_CASE("comparison marks modes comparable only when both sides converged") {
    const SpectralReport a = synthetic("jacobi", {1.0, 2.0, 3.0}, {true, true, true});
    const SpectralReport b = synthetic("sturm", {1.0 + 1e-9, 2.1}, {true, false});

    const json cmp = compare_reports({a, b}, 1e-6);
    CHECK(cmp["methods"] == json::array({"jacobi", "sturm"}));
    CHECK(cmp["comparable_pairs"] == 1);
    CHECK(cmp["modes"][0]["comparable"] == true);
    CHECK(cmp["modes"][0]["pass"] == true);
    CHECK(cmp["modes"][1]["comparable"] == false); // sturm did not converge there
    CHECK(cmp["modes"][1]["pass"] == true);        // vacuously
    CHECK(cmp["modes"][2]["comparable"] == false); // sturm has no third mode
    CHECK(cmp["all_pass"] == true);
    CHECK(cmp["max_rel_delta"].get<double>() <= 2e-9);

    // a tolerance below the actual delta flips the verdict on mode 1 only
    const json tight = compare_reports({a, b}, 1e-12);
    CHECK(tight["modes"][0]["pass"] == false);
    CHECK(tight["all_pass"] == false);

    CHECK_THROWS_AS(compare_reports({}, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(compare_reports({a}, 0.0), std::invalid_argument);
}

TEST_CASE("comparison holds coarse methods to their advertised accuracy") {
    const SpectralReport a = synthetic("jacobi", {1.3177075503}, {true});
    SpectralReport b = synthetic("kernel", {1.3176683324}, {true}); // delta ~3e-5
    b.accuracy = 1e-4;
    const json cmp = compare_reports({a, b}, 1e-6);
    CHECK(cmp["modes"][0]["pass"] == true);
    CHECK(cmp["all_pass"] == true);
    CHECK(cmp["method_accuracy"]["kernel"].get<double>() == 1e-4);
    CHECK(report_json(b)["accuracy"].get<double>() == 1e-4);

    b.accuracy = 0.0; // without the advertisement the base tolerance governs
    CHECK(compare_reports({a, b}, 1e-6)["all_pass"] == false);
}

TEST_CASE("csv writers emit plot-ready tables") {
    const SpectralReport r = synthetic("kernel", {1.5, 2.5}, {true, false});
    const std::string csv = spectrum_csv(r);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "mode,sigma_re,sigma_im,residual,converged");
    std::getline(lines, line);
    CHECK(line == "1,1.5,0,9.9999999999999998e-13,1");
    std::getline(lines, line);
    CHECK(line == "2,2.5,0,9.9999999999999998e-13,0");

    const KernelGrid g = positive_kernel_grid(GribovParams{1.0, 1.0}, 4.0, 1);
    const std::string kcsv = kernel_csv(g);
    std::istringstream klines(kcsv);
    std::size_t count = 0;
    std::string first;
    while (std::getline(klines, line)) {
        if (count == 0) first = line;
        ++count;
    }
    CHECK(count == 33); // border row + 32 node rows
    CHECK(first.substr(0, 2) == "0,");
}

TEST_CASE("text files land on disk with parent directories") {
    namespace fs = std::filesystem;
    const std::string path = "report_test_out/nested/file.json";
    write_text_file(path, "{\"ok\":true}");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{\"ok\":true}");
    fs::remove_all("report_test_out");
}

} // TEST_SUITE
