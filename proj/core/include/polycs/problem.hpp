#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polycs/algebra.hpp"
#include "polycs/coherent.hpp"
#include "polycs/realizations.hpp"

namespace polycs {

enum class Mode { AlgebraVerify, CsBuild, CsStats, Realize, MeasureCheck };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

struct AlgebraInput {
  AlgebraSpec spec;
  double j = 0.0;
  int dim = 0;
};

struct RealizationInput {
  std::string kind;  // trilinear | anharmonic | multiphoton | dicke | oscillator-su11
  std::vector<int> cutoffs;
  std::map<std::string, double> params;
  std::optional<std::vector<double>> sector;  // joint charge eigenvalues
};

// Mode-specific knobs; only fields present in the input JSON are engaged,
// so a spec round-trips through serialization unchanged.
struct ProblemParams {
  std::optional<Complex> alpha;
  std::optional<double> tol;
  std::optional<int> b;
  std::optional<std::string> family;  // bg | quadratic | kummer
  std::optional<double> phi;
  std::optional<double> eps;
  std::optional<int> n_max;
  std::optional<std::vector<std::array<double, 3>>> kummer_triples;
};

struct ProblemSpec {
  Mode mode = Mode::AlgebraVerify;
  std::optional<AlgebraInput> algebra;
  std::optional<RealizationInput> realization;
  ProblemParams params;
};

// Parse + validate (domain gates: phi < 0, eps < 1/2, cutoff minima, ...).
// Throws ParseError on malformed input, DomainError on violated constraints.
ProblemSpec load_problem_spec(const std::string& path);
ProblemSpec parse_problem_spec(const std::string& json_text);
std::string problem_spec_to_json(const ProblemSpec& spec);

// Built-in presets, addressed by (mode, name). Throws DomainError for an
// unknown combination.
std::string preset_spec_json(const std::string& mode, const std::string& name);
std::vector<std::string> preset_names(const std::string& mode);

RealizedGenerators build_realization(const RealizationInput& input);

enum class ReportStatus { Pass, Fail, Unresolved };

struct Report {
  ReportStatus status = ReportStatus::Fail;
  std::map<std::string, double> metrics;
  std::map<std::string, double> thresholds;  // gate values, keyed like metrics
  std::vector<std::string> artifacts;        // file names relative to out dir

  // pass iff every thresholded metric is within its threshold.
  void finalize();
  std::string to_json() const;  // canonical: sorted keys, 17 digits
};

// Runs the pipeline for the spec, writes report.json plus mode-specific
// artifacts into out_dir, and returns the report. Library errors surface as
// status=fail with the error name recorded in the metrics.
Report execute(const ProblemSpec& spec, const std::string& out_dir);

// 0 pass, 1 fail/unresolved, 2 reserved for spec errors at load time.
int exit_code(const Report& report);

}  // namespace polycs
