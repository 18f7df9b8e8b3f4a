#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dzk/config.hpp"
#include "dzk/runner.hpp"

using namespace dzk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config: defaults, derivation, rejection") {
    const ExperimentConfig def = parse_config("");
    CHECK(def.nx == 64);
    CHECK(def.cases.size() == all_case_ids().size());
    CHECK(def.q == doctest::Approx(4.0)); // derived from p = 4

    const ExperimentConfig c = parse_config(
        "estimate.case = strichartz\n"
        "estimate.p = 4\n"
        "# comment line\n"
        "run.seed = 7\n");
    REQUIRE(c.cases.size() == 1);
    CHECK(c.cases[0] == "strichartz");
    CHECK(c.q == doctest::Approx(4.0));
    CHECK(c.seed == 7);
    CHECK(c.family.seed == 7);

    const ExperimentConfig c8 = parse_config("estimate.p = 8\n");
    CHECK(c8.q == doctest::Approx(8.0 / 3.0));

    CHECK_THROWS_AS(parse_config("grid.nx = 7\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("grid.lx = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("nonsense.key = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("grid.nx = banana\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("estimate.case = not-a-case\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("estimate.case = decay\nestimate.cases = decay\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config("grid.nx\n"), std::invalid_argument);
    // inadmissible explicit pair
    CHECK_THROWS_AS(parse_config("estimate.p = 4\nestimate.q = 3\n"),
                    std::invalid_argument);

    // family keys round through
    const ExperimentConfig f = parse_config(
        "family.kind = gaussian\nfamily.count = 3\nfamily.sigma_x = 0.25\n");
    CHECK(f.family.kind == FamilyKind::Gaussian);
    CHECK(f.family.count == 3);
    CHECK(f.family.sigma_x == doctest::Approx(0.25));
}

TEST_CASE("runner: unitarity case produces a pass record and csv artifacts") {
    const std::string dir = (fs::temp_directory_path() / "dzk_runner_test").string();
    fs::remove_all(dir);

    ExperimentConfig cfg = parse_config(
        "estimate.case = unitarity\n"
        "grid.nx = 16\ngrid.ny = 16\ngrid.nz = 16\n"
        "family.count = 3\nfamily.band = 3\n");
    cfg.output_dir = dir;

    const RunResult result = run(cfg);
    CHECK(result.ok);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].case_id == "unitarity");
    CHECK(result.records[0].status == "pass");
    REQUIRE(!result.records[0].artifacts.empty());
    CHECK(fs::exists(result.records[0].artifacts[0]));
    CHECK(fs::exists(dir + "/summary.csv"));
    CHECK(fs::exists(dir + "/manifest.txt"));
    fs::remove_all(dir);
}

TEST_CASE("runner: identical seeds give byte-identical reports") {
    const std::string dir = (fs::temp_directory_path() / "dzk_repro_test").string();
    fs::remove_all(dir);

    ExperimentConfig cfg = parse_config(
        "estimate.case = unitarity\n"
        "grid.nx = 16\ngrid.ny = 16\ngrid.nz = 16\n"
        "family.count = 3\nfamily.band = 3\nrun.seed = 5\n");
    cfg.output_dir = dir;

    const RunResult r1 = run(cfg);
    const RunResult r2 = run(cfg); // versioned, never overwrites
    REQUIRE(r1.records.size() == 1);
    REQUIRE(r2.records.size() == 1);
    CHECK(r1.records[0].artifacts[0] != r2.records[0].artifacts[0]);
    CHECK(slurp(r1.records[0].artifacts[0]) == slurp(r2.records[0].artifacts[0]));
    fs::remove_all(dir);
}

TEST_CASE("runner: failing case is reported, not thrown") {
    const std::string dir = (fs::temp_directory_path() / "dzk_fail_test").string();
    fs::remove_all(dir);
    // band larger than the grid resolves: the case errors out, the runner
    // records a fail and keeps going
    ExperimentConfig cfg = parse_config(
        "estimate.cases = unitarity\n"
        "grid.nx = 8\ngrid.ny = 8\ngrid.nz = 8\n"
        "family.count = 2\nfamily.band = 10\n");
    cfg.output_dir = dir;
    const RunResult result = run(cfg);
    CHECK(!result.ok);
    CHECK(result.records[0].status == "fail");
    CHECK(result.records[0].metrics_json.find("error") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("solve entry point writes dumps and a manifest") {
    const std::string dir = (fs::temp_directory_path() / "dzk_solve_test").string();
    fs::remove_all(dir);
    ExperimentConfig cfg = parse_config(
        "grid.nx = 16\ngrid.ny = 16\ngrid.nz = 16\n"
        "solver.T = 0.05\nsolver.nt = 9\nsolver.amplitude = 0.2\n");
    cfg.output_dir = dir;
    const ReportRecord rec = run_solve(cfg, dir);
    CHECK(rec.status == "pass");
    REQUIRE(rec.artifacts.size() == 3);
    for (const auto& a : rec.artifacts) CHECK(fs::exists(a));
    fs::remove_all(dir);
}
