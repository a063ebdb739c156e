#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polycs/errors.hpp"
#include "polycs/problem.hpp"

using namespace polycs;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("polycs_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(POLYCS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WEXITSTATUS(raw);
}

const char* kExampleSpec = R"({
  "mode": "cs-build",
  "algebra": {"name": "su11", "g_coeffs": [0, -0.5, -0.5], "j": 1, "dim": 64},
  "params": {"alpha": [0.7, 0.0], "tol": 1e-12}
})";

}  // namespace

TEST_CASE("minimal spec loads") {
  const ProblemSpec spec = parse_problem_spec(kExampleSpec);
  CHECK(spec.mode == Mode::CsBuild);
  REQUIRE(spec.algebra.has_value());
  CHECK(spec.algebra->dim == 64);
  CHECK(spec.algebra->j == doctest::Approx(1.0));
  CHECK(spec.algebra->spec.g.coeff(2) == doctest::Approx(-0.5));
  REQUIRE(spec.params.alpha.has_value());
  CHECK(spec.params.alpha->real() == doctest::Approx(0.7));
}

TEST_CASE("domain gates at load time") {
  CHECK_THROWS_AS(parse_problem_spec(
                      R"({"mode": "measure-check",
                          "params": {"family": "bg", "phi": 0.2}})"),
                  DomainError);
  CHECK_THROWS_AS(parse_problem_spec(
                      R"({"mode": "measure-check",
                          "params": {"family": "quadratic", "eps": 0.9}})"),
                  DomainError);
  CHECK_THROWS_AS(parse_problem_spec(R"({"mode": "cs-build"})"), DomainError);
  CHECK_THROWS_AS(parse_problem_spec(
                      R"({"mode": "realize",
                          "realization": {"realization": "trilinear",
                                          "cutoffs": [1, 4, 4]}})"),
                  DomainError);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_problem_spec("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_problem_spec(R"({"mode": "no-such-mode"})"), ParseError);
  CHECK_THROWS_AS(load_problem_spec("/nonexistent/path.json"), ParseError);
}

TEST_CASE("spec round trip") {
  const std::vector<std::string> specs = {
      kExampleSpec,
      preset_spec_json("realize", "trilinear"),
      preset_spec_json("realize", "dicke"),
      preset_spec_json("measure-check", "kummer-mellin"),
      preset_spec_json("measure-check", "su11-bg"),
      preset_spec_json("algebra-verify", "higgs"),
  };
  for (const std::string& text : specs) {
    const ProblemSpec once = parse_problem_spec(text);
    const std::string serialized = problem_spec_to_json(once);
    const ProblemSpec twice = parse_problem_spec(serialized);
    CHECK(problem_spec_to_json(twice) == serialized);
  }
}

TEST_CASE("all presets parse and validate") {
  for (const std::string mode :
       {"algebra-verify", "cs-build", "cs-stats", "realize", "measure-check"})
    for (const std::string& name : preset_names(mode))
      CHECK_NOTHROW(parse_problem_spec(preset_spec_json(mode, name)));
  CHECK_THROWS_AS(preset_spec_json("cs-build", "no-such-preset"), DomainError);
}

TEST_CASE("execute writes a deterministic report") {
  const ProblemSpec spec =
      parse_problem_spec(preset_spec_json("cs-build", "su11-bg"));
  const auto dir_a = fresh_dir("det_a");
  const auto dir_b = fresh_dir("det_b");
  const Report a = execute(spec, dir_a.string());
  const Report b = execute(spec, dir_b.string());
  CHECK(a.status == ReportStatus::Pass);
  CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));
  CHECK(slurp(dir_a / "coefficients.csv") == slurp(dir_b / "coefficients.csv"));
  CHECK(std::filesystem::exists(dir_a / "state.json"));
  CHECK(exit_code(a) == 0);
}

TEST_CASE("execute algebra-verify on the cubic preset") {
  const ProblemSpec spec =
      parse_problem_spec(preset_spec_json("algebra-verify", "higgs"));
  const auto dir = fresh_dir("higgs_verify");
  const Report report = execute(spec, dir.string());
  CHECK(report.status == ReportStatus::Pass);
  CHECK(report.metrics.at("closure_residual") <= 1e-12);
  CHECK(report.metrics.at("ccr_residual") <= 1e-12);
  CHECK(report.metrics.at("mapping_residual") <= 1e-12);
}

TEST_CASE("execute measure-check: moments pass, quadratic is unresolved") {
  const auto dir = fresh_dir("measure");
  const Report bg = execute(
      parse_problem_spec(preset_spec_json("measure-check", "su11-bg")),
      dir.string());
  CHECK(bg.status == ReportStatus::Pass);
  CHECK(bg.metrics.at("moment_rel_error_max") <= 1e-6);
  CHECK(std::filesystem::exists(dir / "moments.json"));

  const Report quad = execute(
      parse_problem_spec(preset_spec_json("measure-check", "quadratic-eps")),
      dir.string());
  CHECK(quad.status == ReportStatus::Unresolved);
  CHECK(quad.metrics.at("fit_rel_error_max") <= 1e-6);
  CHECK(exit_code(quad) == 1);

  const Report mellin = execute(
      parse_problem_spec(preset_spec_json("measure-check", "kummer-mellin")),
      dir.string());
  CHECK(mellin.status == ReportStatus::Pass);
}

TEST_CASE("library errors surface as a failing report") {
  // su(2)-signed shift terminates immediately at j = 0.
  const ProblemSpec spec = parse_problem_spec(
      R"({"mode": "algebra-verify",
          "algebra": {"name": "su2", "g_coeffs": [0, 1, 1], "j": 0, "dim": 8}})");
  const auto dir = fresh_dir("err");
  const Report report = execute(spec, dir.string());
  CHECK(report.status == ReportStatus::Fail);
  CHECK(report.metrics.count("error_NonUnitaryError") == 1);
  CHECK(exit_code(report) == 1);
}

TEST_CASE("report pass/fail contract") {
  Report r;
  r.metrics["x"] = 1e-13;
  r.thresholds["x"] = 1e-12;
  r.finalize();
  CHECK(r.status == ReportStatus::Pass);
  r.metrics["x"] = 1e-11;
  r.finalize();
  CHECK(r.status == ReportStatus::Fail);
}

TEST_CASE("cli exit codes") {
  const auto dir = fresh_dir("cli");

  // 0: pass.
  CHECK(run_cli("algebra-verify --preset su11-bg --out " + (dir / "a").string()) ==
        0);

  // 2: spec errors (unknown preset, malformed file, violated domain gate).
  CHECK(run_cli("cs-build --preset nope --out " + (dir / "b").string()) == 2);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run_cli("cs-build --spec " + bad.string()) == 2);
  CHECK(run_cli("measure-check --preset su11-bg --override params.phi=0.2") ==
        2);

  // 1: a run that fails at execution time.
  CHECK(run_cli("algebra-verify --preset su11-bg "
                "--override algebra.g_coeffs=[0,1,1] --override algebra.j=0 "
                "--out " + (dir / "c").string()) == 1);
}

TEST_CASE("cli determinism end to end") {
  const auto dir_a = fresh_dir("cli_det_a");
  const auto dir_b = fresh_dir("cli_det_b");
  CHECK(run_cli("cs-stats --preset quadratic-eps --out " + dir_a.string()) == 0);
  CHECK(run_cli("cs-stats --preset quadratic-eps --out " + dir_b.string()) == 0);
  CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));
}
