#include "polycs/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polycs/conjugate.hpp"
#include "polycs/errors.hpp"
#include "polycs/io.hpp"
#include "polycs/measure.hpp"

namespace polycs {

using nlohmann::json;

Mode parse_mode(const std::string& name) {
  if (name == "algebra-verify") return Mode::AlgebraVerify;
  if (name == "cs-build") return Mode::CsBuild;
  if (name == "cs-stats") return Mode::CsStats;
  if (name == "realize") return Mode::Realize;
  if (name == "measure-check") return Mode::MeasureCheck;
  throw ParseError("unknown mode: " + name);
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::AlgebraVerify: return "algebra-verify";
    case Mode::CsBuild: return "cs-build";
    case Mode::CsStats: return "cs-stats";
    case Mode::Realize: return "realize";
    case Mode::MeasureCheck: return "measure-check";
  }
  return "?";
}

namespace {

Complex parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ParseError(field + ": expected a number or [re, im] pair");
}

int expected_charge_count(const std::string& kind) {
  return kind == "trilinear" ? 2 : 1;
}

void validate(const ProblemSpec& spec) {
  const bool needs_algebra = spec.mode == Mode::AlgebraVerify ||
                             spec.mode == Mode::CsBuild ||
                             spec.mode == Mode::CsStats;
  if (needs_algebra) {
    if (!spec.algebra) throw DomainError("mode requires an \"algebra\" block");
    if (spec.algebra->dim < 2) throw DomainError("algebra dim must be >= 2");
    if (spec.params.tol && !(*spec.params.tol > 0.0))
      throw DomainError("tol must be > 0");
  }

  if (spec.mode == Mode::Realize) {
    if (!spec.realization)
      throw DomainError("realize mode requires a \"realization\" block");
    const RealizationInput& r = *spec.realization;
    const auto need_cutoffs = [&](std::size_t count, int minimum) {
      if (r.cutoffs.size() != count)
        throw DomainError(r.kind + " expects " + std::to_string(count) +
                          " cutoffs");
      for (int c : r.cutoffs)
        if (c < minimum)
          throw DomainError(r.kind + " cutoffs must be >= " +
                            std::to_string(minimum));
    };
    const auto param = [&](const std::string& key) {
      const auto it = r.params.find(key);
      if (it == r.params.end())
        throw DomainError(r.kind + " requires param \"" + key + "\"");
      return it->second;
    };
    if (r.kind == "trilinear") {
      need_cutoffs(3, 2);
    } else if (r.kind == "anharmonic") {
      need_cutoffs(2, 4);
    } else if (r.kind == "multiphoton") {
      const int m = static_cast<int>(param("m"));
      const int n = static_cast<int>(param("n"));
      if (m < 1 || n < 1) throw DomainError("multiphoton requires m, n >= 1");
      need_cutoffs(2, m + n);
    } else if (r.kind == "dicke") {
      const int n_atoms = static_cast<int>(param("n_atoms"));
      const int n_photon = static_cast<int>(param("n_photon"));
      if (n_atoms < 1 || n_photon < 1)
        throw DomainError("dicke requires n_atoms, n_photon >= 1");
      need_cutoffs(1, n_photon + 1);
    } else if (r.kind == "oscillator-su11") {
      need_cutoffs(1, 3);
    } else {
      throw DomainError("unknown realization kind: " + r.kind);
    }
    if (r.sector &&
        static_cast<int>(r.sector->size()) != expected_charge_count(r.kind))
      throw DomainError(r.kind + " sector needs " +
                        std::to_string(expected_charge_count(r.kind)) +
                        " charge eigenvalues");
  }

  if (spec.mode == Mode::MeasureCheck) {
    const std::string family = spec.params.family.value_or("bg");
    if (family == "bg") {
      if (!(spec.params.phi.value_or(-1.0) < 0.0))
        throw DomainError("bg measure requires phi < 0");
    } else if (family == "quadratic") {
      if (!(spec.params.eps.value_or(-0.5) < 0.5))
        throw DomainError("quadratic measure requires eps < 1/2");
    } else if (family == "kummer") {
      if (spec.params.kummer_triples)
        for (const auto& t : *spec.params.kummer_triples)
          if (!(t[1] > 0.0) || !(t[1] < t[0]))
            throw DomainError("kummer triple requires 0 < b < a");
    } else {
      throw DomainError("unknown measure family: " + family);
    }
    if (spec.params.n_max && *spec.params.n_max < 1)
      throw DomainError("n_max must be >= 1");
  }
}

ProblemSpec from_json(const json& root) {
  if (!root.is_object()) throw ParseError("spec must be a JSON object");
  if (!root.contains("mode") || !root["mode"].is_string())
    throw ParseError("spec needs a string \"mode\" field");

  ProblemSpec spec;
  spec.mode = parse_mode(root["mode"].get<std::string>());

  if (root.contains("algebra")) {
    const json& a = root["algebra"];
    if (!a.is_object() || !a.contains("g_coeffs") || !a.contains("j") ||
        !a.contains("dim"))
      throw ParseError("algebra block needs name, g_coeffs, j, dim");
    AlgebraInput in;
    in.spec.name = a.value("name", "unnamed");
    std::vector<double> coeffs;
    for (const json& c : a["g_coeffs"]) {
      if (!c.is_number()) throw ParseError("g_coeffs must be numbers");
      coeffs.push_back(c.get<double>());
    }
    in.spec.g = CasimirShift{std::move(coeffs)};
    in.j = a["j"].get<double>();
    in.dim = a["dim"].get<int>();
    spec.algebra = std::move(in);
  }

  if (root.contains("realization")) {
    const json& r = root["realization"];
    if (!r.is_object() || !r.contains("realization"))
      throw ParseError("realization block needs a \"realization\" kind");
    RealizationInput in;
    in.kind = r["realization"].get<std::string>();
    if (r.contains("cutoffs"))
      for (const json& c : r["cutoffs"]) in.cutoffs.push_back(c.get<int>());
    if (r.contains("params"))
      for (const auto& [key, value] : r["params"].items())
        in.params[key] = value.get<double>();
    if (r.contains("sector")) {
      std::vector<double> sector;
      for (const json& s : r["sector"]) sector.push_back(s.get<double>());
      in.sector = std::move(sector);
    }
    spec.realization = std::move(in);
  }

  if (root.contains("params")) {
    const json& p = root["params"];
    if (!p.is_object()) throw ParseError("params must be an object");
    if (p.contains("alpha")) spec.params.alpha = parse_complex(p["alpha"], "alpha");
    if (p.contains("tol")) spec.params.tol = p["tol"].get<double>();
    if (p.contains("b")) spec.params.b = p["b"].get<int>();
    if (p.contains("family")) spec.params.family = p["family"].get<std::string>();
    if (p.contains("phi")) spec.params.phi = p["phi"].get<double>();
    if (p.contains("eps")) spec.params.eps = p["eps"].get<double>();
    if (p.contains("n_max")) spec.params.n_max = p["n_max"].get<int>();
    if (p.contains("kummer_triples")) {
      std::vector<std::array<double, 3>> triples;
      for (const json& t : p["kummer_triples"]) {
        if (!t.is_array() || t.size() != 3)
          throw ParseError("kummer_triples entries must be [a, b, c]");
        triples.push_back({t[0].get<double>(), t[1].get<double>(),
                           t[2].get<double>()});
      }
      spec.params.kummer_triples = std::move(triples);
    }
  }

  validate(spec);
  return spec;
}

}  // namespace

ProblemSpec parse_problem_spec(const std::string& json_text) {
  const json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) throw ParseError("malformed JSON");
  return from_json(root);
}

ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_spec(buf.str());
}

std::string problem_spec_to_json(const ProblemSpec& spec) {
  json root;
  root["mode"] = mode_name(spec.mode);
  if (spec.algebra) {
    json a;
    a["name"] = spec.algebra->spec.name;
    a["g_coeffs"] = spec.algebra->spec.g.coeffs();
    a["j"] = spec.algebra->j;
    a["dim"] = spec.algebra->dim;
    root["algebra"] = std::move(a);
  }
  if (spec.realization) {
    json r;
    r["realization"] = spec.realization->kind;
    r["cutoffs"] = spec.realization->cutoffs;
    r["params"] = spec.realization->params;
    if (spec.realization->sector) r["sector"] = *spec.realization->sector;
    root["realization"] = std::move(r);
  }
  json p = json::object();
  if (spec.params.alpha)
    p["alpha"] = {spec.params.alpha->real(), spec.params.alpha->imag()};
  if (spec.params.tol) p["tol"] = *spec.params.tol;
  if (spec.params.b) p["b"] = *spec.params.b;
  if (spec.params.family) p["family"] = *spec.params.family;
  if (spec.params.phi) p["phi"] = *spec.params.phi;
  if (spec.params.eps) p["eps"] = *spec.params.eps;
  if (spec.params.n_max) p["n_max"] = *spec.params.n_max;
  if (spec.params.kummer_triples) {
    json triples = json::array();
    for (const auto& t : *spec.params.kummer_triples)
      triples.push_back({t[0], t[1], t[2]});
    p["kummer_triples"] = std::move(triples);
  }
  if (!p.empty()) root["params"] = std::move(p);
  return root.dump(2);
}

namespace {

const char* algebra_preset_block(const std::string& name) {
  if (name == "su11-bg")
    return R"("algebra": {"name": "su11-bg", "g_coeffs": [0, -0.5, -0.5], "j": 1, "dim": 64})";
  if (name == "quadratic-eps")
    return R"("algebra": {"name": "quadratic-eps", "g_coeffs": [-0.375, -1.75, -2.5, -1], "j": 0.5, "dim": 64})";
  if (name == "higgs")
    return R"("algebra": {"name": "higgs", "g_coeffs": [0, -1, -1.1, -0.2, -0.1], "j": 1, "dim": 32})";
  return nullptr;
}

const char* realize_preset_block(const std::string& name) {
  if (name == "trilinear")
    return R"("realization": {"realization": "trilinear", "cutoffs": [4, 4, 4], "params": {"w1": 1.0, "w2": 0.9, "w3": 0.8, "kappa": 0.1}, "sector": [2, 0]})";
  if (name == "anharmonic")
    return R"("realization": {"realization": "anharmonic", "cutoffs": [6, 12], "params": {}})";
  if (name == "dicke")
    return R"("realization": {"realization": "dicke", "cutoffs": [8], "params": {"n_atoms": 2, "n_photon": 2, "eps_atom": 0.7, "w1": 1.0, "kappa": 0.2}})";
  if (name == "oscillator-su11")
    return R"("realization": {"realization": "oscillator-su11", "cutoffs": [128], "params": {}, "sector": [1]})";
  return nullptr;
}

const char* cs_alpha(const std::string& name) {
  if (name == "su11-bg") return "[0.7, 0.0]";
  if (name == "quadratic-eps") return "[0.8, 0.0]";
  return "[0.6, 0.0]";
}

}  // namespace

std::string preset_spec_json(const std::string& mode, const std::string& name) {
  const auto bad = [&]() -> std::string {
    throw DomainError("no preset \"" + name + "\" for mode " + mode);
  };
  if (mode == "algebra-verify") {
    const char* a = algebra_preset_block(name);
    if (!a) return bad();
    return std::string("{\"mode\": \"algebra-verify\", ") + a +
           ", \"params\": {\"b\": 1}}";
  }
  if (mode == "cs-build" || mode == "cs-stats") {
    const char* a = algebra_preset_block(name);
    if (!a) return bad();
    return std::string("{\"mode\": \"") + mode + "\", " + a +
           ", \"params\": {\"alpha\": " + cs_alpha(name) +
           ", \"tol\": 1e-12}}";
  }
  if (mode == "realize") {
    const char* r = realize_preset_block(name);
    if (!r) return bad();
    return std::string("{\"mode\": \"realize\", ") + r + "}";
  }
  if (mode == "measure-check") {
    if (name == "su11-bg")
      return R"({"mode": "measure-check", "params": {"family": "bg", "phi": -1.0, "n_max": 8, "tol": 1e-8}})";
    if (name == "quadratic-eps")
      return R"({"mode": "measure-check", "params": {"family": "quadratic", "eps": -0.5, "n_max": 8}})";
    if (name == "kummer-mellin")
      return R"({"mode": "measure-check", "params": {"family": "kummer", "kummer_triples": [[4, 1.5, 3], [3, 1, 2], [5, 2.5, 3.5]]}})";
    return bad();
  }
  throw DomainError("unknown mode: " + mode);
}

std::vector<std::string> preset_names(const std::string& mode) {
  if (mode == "algebra-verify" || mode == "cs-build" || mode == "cs-stats")
    return {"su11-bg", "quadratic-eps", "higgs"};
  if (mode == "realize")
    return {"trilinear", "anharmonic", "dicke", "oscillator-su11"};
  if (mode == "measure-check")
    return {"su11-bg", "quadratic-eps", "kummer-mellin"};
  return {};
}

RealizedGenerators build_realization(const RealizationInput& in) {
  const auto param = [&](const std::string& key, double fallback) {
    const auto it = in.params.find(key);
    return it == in.params.end() ? fallback : it->second;
  };
  if (in.kind == "trilinear")
    return trilinear_generators(
        {in.cutoffs[0], in.cutoffs[1], in.cutoffs[2]},
        {param("w1", 1.0), param("w2", 1.0), param("w3", 1.0)},
        param("kappa", 0.1));
  if (in.kind == "anharmonic")
    return anharmonic_generators(in.cutoffs[0], in.cutoffs[1]);
  if (in.kind == "multiphoton")
    return multiphoton_generators(
        static_cast<int>(param("m", 1)), static_cast<int>(param("n", 1)),
        {in.cutoffs[0], in.cutoffs[1]}, {param("w0", 1.0), param("w1", 1.0)},
        param("kappa", 0.1));
  if (in.kind == "dicke")
    return dicke_generators(static_cast<int>(param("n_atoms", 1)),
                            static_cast<int>(param("n_photon", 1)),
                            in.cutoffs[0], param("eps_atom", 1.0),
                            param("w1", 1.0), param("kappa", 0.1));
  if (in.kind == "oscillator-su11")
    return oscillator_su11_generators(in.cutoffs[0]);
  throw DomainError("unknown realization kind: " + in.kind);
}

void Report::finalize() {
  status = ReportStatus::Pass;
  for (const auto& [key, threshold] : thresholds) {
    const auto it = metrics.find(key);
    if (it == metrics.end() || !(it->second <= threshold)) {
      status = ReportStatus::Fail;
      return;
    }
  }
}

std::string Report::to_json() const {
  std::string s = "{\n  \"status\": \"";
  s += status == ReportStatus::Pass
           ? "pass"
           : (status == ReportStatus::Unresolved ? "unresolved" : "fail");
  s += "\",\n  \"metrics\": {";
  bool first = true;
  for (const auto& [key, value] : metrics) {
    s += first ? "\n" : ",\n";
    s += "    \"" + key + "\": " + format_double(value);
    first = false;
  }
  s += first ? "},\n" : "\n  },\n";
  s += "  \"thresholds\": {";
  first = true;
  for (const auto& [key, value] : thresholds) {
    s += first ? "\n" : ",\n";
    s += "    \"" + key + "\": " + format_double(value);
    first = false;
  }
  s += first ? "},\n" : "\n  },\n";
  s += "  \"artifacts\": [";
  first = true;
  for (const std::string& a : artifacts) {
    s += first ? "\n" : ",\n";
    s += "    \"" + a + "\"";
    first = false;
  }
  s += first ? "]\n}\n" : "\n  ]\n}\n";
  return s;
}

int exit_code(const Report& report) {
  return report.status == ReportStatus::Pass ? 0 : 1;
}

namespace {

void gate(Report& r, const std::string& key, double value, double threshold) {
  r.metrics[key] = value;
  r.thresholds[key] = threshold;
}

void info(Report& r, const std::string& key, double value) {
  r.metrics[key] = std::isfinite(value) ? value : 9.9e99;
}

double max_elementwise_relative(const StateVector& a, const StateVector& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = std::max({std::abs(a(i)), std::abs(b(i)), 1e-280});
    worst = std::max(worst, std::abs(a(i) - b(i)) / scale);
  }
  return worst;
}

void run_algebra_verify(const ProblemSpec& spec, Report& r) {
  const AlgebraInput& in = *spec.algebra;
  const LowestWeightRep rep =
      build_lowest_weight_rep(in.spec, in.j, in.dim);
  const StructurePolynomial f = in.spec.f();

  gate(r, "closure_residual", verify_closure(rep, f).max_residual, 1e-12);

  // Relative to the radicand scale: the identities are exact, the rounding
  // is proportional to e^2.
  double telescoping = 0.0;
  double casimir_consistency = 0.0;
  for (int m = 1; m + 1 < rep.dim(); ++m) {
    const double e2 = rep.e[static_cast<std::size_t>(m)] *
                      rep.e[static_cast<std::size_t>(m)];
    const double e2n = rep.e[static_cast<std::size_t>(m + 1)] *
                       rep.e[static_cast<std::size_t>(m + 1)];
    telescoping = std::max(telescoping, std::abs(e2n - e2 + f(rep.j + m)) /
                                            std::max({1.0, e2, e2n}));
  }
  for (int m = 1; m < rep.dim(); ++m) {
    const double e2 = rep.e[static_cast<std::size_t>(m)] *
                      rep.e[static_cast<std::size_t>(m)];
    casimir_consistency = std::max(
        casimir_consistency,
        std::abs(e2 + in.spec.g(rep.j + m - 1.0) - *rep.casimir) /
            std::max(1.0, e2));
  }
  gate(r, "telescoping_residual", telescoping, 1e-12);
  gate(r, "casimir_consistency", casimir_consistency, 1e-12);

  const ConjugatePair pair =
      canonical_conjugate_matrix(rep, conjugate_shift(rep));
  gate(r, "ccr_residual", ccr_residual(pair), 1e-12);
  gate(r, "adjoint_ccr_residual", adjoint_ccr_residual(pair), 1e-12);

  const int b = spec.params.b.value_or(1);
  const LieMapping map = lie_mapping(rep, b);
  gate(r, "mapping_residual", mapping_residual(map, rep), 1e-12);

  info(r, "dim", rep.dim());
  info(r, "j", rep.j);
  info(r, "casimir", *rep.casimir);
}

CoherentState run_cs_common(const ProblemSpec& spec, Report& r,
                            const std::string& out_dir,
                            LowestWeightRep& rep_out) {
  const AlgebraInput& in = *spec.algebra;
  rep_out = build_lowest_weight_rep(in.spec, in.j, in.dim);
  const Complex alpha = spec.params.alpha.value_or(Complex{0.7, 0.0});
  const double tol = spec.params.tol.value_or(1e-12);

  const CoherentState state = annihilation_cs(rep_out, alpha, tol);
  gate(r, "eigen_residual", annihilation_residual(rep_out, state), 1e-10);
  gate(r, "norm_error", std::abs(state.coeffs.norm() - 1.0), 1e-12);

  const ConjugatePair pair =
      canonical_conjugate_matrix(rep_out, conjugate_shift(rep_out));
  const CoherentState via_exp = exp_conjugate_cs(pair, alpha, tol);
  gate(r, "construction_equivalence",
       max_elementwise_relative(state.coeffs, via_exp.coeffs), 1e-12);

  info(r, "truncation", state.truncation);
  info(r, "tail_bound", state.tail_bound);
  info(r, "norm_log", state.log_norm);

  write_coefficients_csv(out_dir + "/coefficients.csv", state.coeffs);
  StateMetadata meta;
  meta.algebra = in.spec.name;
  meta.j = in.j;
  meta.eigenvalue = alpha;
  meta.truncation = state.truncation;
  meta.tail_bound = state.tail_bound;
  meta.norm_log = state.log_norm;
  write_state_json(out_dir + "/state.json", meta);
  r.artifacts.push_back("coefficients.csv");
  r.artifacts.push_back("state.json");
  return state;
}

void run_cs_stats(const ProblemSpec& spec, Report& r,
                  const CoherentState& state, const LowestWeightRep& rep) {
  const StateStatistics stats = state_statistics(state.coeffs, rep.j);
  info(r, "mean_n0", stats.mean_n0);
  info(r, "var_n0", stats.var_n0);
  if (stats.mandel_q) {
    info(r, "mandel_q", *stats.mandel_q);
    // Refinement cross-check: rebuild with a much tighter tail.
    const double tol = spec.params.tol.value_or(1e-12);
    const CoherentState refined =
        annihilation_cs(rep, state.eigenvalue, std::max(tol * tol, 1e-300));
    const StateStatistics rstats = state_statistics(refined.coeffs, rep.j);
    gate(r, "q_refinement", std::abs(*stats.mandel_q - *rstats.mandel_q),
         1e-10);
  }
}

void run_realize(const ProblemSpec& spec, Report& r) {
  const RealizationInput& in = *spec.realization;
  const RealizedGenerators gen = build_realization(in);

  gate(r, "hermiticity_residual", hermiticity_residual(gen), 1e-12);
  gate(r, "charge_commutation", charge_commutation_residual(gen), 1e-12);
  const double step = (in.kind == "anharmonic") ? 2.0 : 1.0;
  gate(r, "ladder_residual", ladder_commutator_residual(gen, step), 1e-12);
  info(r, "dim", gen.dim());

  if (in.kind == "trilinear" || in.kind == "multiphoton" ||
      in.kind == "oscillator-su11") {
    int degree = 2;
    if (in.kind == "multiphoton") {
      const int m = static_cast<int>(in.params.at("m"));
      const int n = static_cast<int>(in.params.at("n"));
      degree = m + n - 1;
    } else if (in.kind == "oscillator-su11") {
      degree = 1;
    }
    double worst = 0.0;
    const std::vector<SectorFit> fits = commutator_sector_fits(gen, degree);
    for (const SectorFit& f : fits) worst = std::max(worst, f.residual);
    gate(r, "sector_fit_residual", worst, 1e-10);
    info(r, "n_sectors", static_cast<double>(fits.size()));
  }
  if (in.kind == "anharmonic") {
    gate(r, "f_identity_residual", anharmonic_f_identity_residual(gen), 1e-12);
    gate(r, "jbasis_residual", anharmonic_jbasis_residual(gen), 1e-12);
  }
  if (in.kind == "dicke") {
    double worst = 0.0;
    for (const HSectorFit& f : h_decomposition_fits(gen))
      worst = std::max(worst, f.residual);
    gate(r, "h_fit_residual", worst, 1e-10);
  }

  if (in.sector) {
    const SectorReduction red = sector_reduce(gen, gen.charges, *in.sector);
    gate(r, "roundtrip_residual", red.roundtrip_residual, 1e-10);
    info(r, "extracted_j", red.rep.j);
    info(r, "extracted_dim", red.rep.dim());
    info(r, "sector_dim", red.sector_dim);
    info(r, "conjugate_alpha", conjugate_shift(red.rep));
    info(r, "rep_terminated", red.rep.terminated ? 1.0 : 0.0);
  }
}

void run_measure_check(const ProblemSpec& spec, Report& r,
                       const std::string& out_dir) {
  const std::string family = spec.params.family.value_or("bg");
  if (family == "bg") {
    const double phi = spec.params.phi.value_or(-1.0);
    const int n_max = spec.params.n_max.value_or(8);
    const double tol = spec.params.tol.value_or(1e-8);
    const MomentReport report = verify_measure_moments(
        bg_measure(phi), bg_moments(phi, n_max), tol);
    double worst = 0.0;
    for (double e : report.rel_error) worst = std::max(worst, e);
    gate(r, "moment_rel_error_max", worst, 1e-6);
    info(r, "n_moments", static_cast<double>(report.n.size()));
    write_moment_report_json(out_dir + "/moments.json", report);
    r.artifacts.push_back("moments.json");
    return;
  }
  if (family == "quadratic") {
    const double eps = spec.params.eps.value_or(-0.5);
    const int n_max = spec.params.n_max.value_or(8);
    const MomentSequence target = quadratic_moments(eps, std::max(n_max, 8));
    const QuadraticMeasureFit fit = fit_quadratic_measure(eps);

    double fit_err = 0.0;
    for (double e : fit.fit_rel_error) fit_err = std::max(fit_err, e);
    double val_err = 0.0;
    for (double e : fit.validation_rel_error) val_err = std::max(val_err, e);
    info(r, "fit_rel_error_max", fit_err);
    info(r, "validation_rel_error_max", val_err);
    info(r, "fit_resolved", fit.resolved ? 1.0 : 0.0);
    info(r, "candidate_p", fit.p);
    info(r, "candidate_a", fit.a);
    info(r, "candidate_c", fit.c);
    info(r, "candidate_s", fit.s);

    // Emit the target sequence alongside the candidate's analytic moments.
    MomentReport report;
    const std::vector<double> cand =
        candidate_measure_moments(fit.p, fit.a, fit.c, fit.s, n_max);
    for (int n = 0; n <= n_max; ++n) {
      report.n.push_back(n);
      const double t = target.values[static_cast<std::size_t>(n)];
      const double c = cand[static_cast<std::size_t>(n)];
      report.computed.push_back(std::isnan(c) ? 0.0 : c);
      report.target.push_back(t);
      report.rel_error.push_back(std::isnan(c) ? 9.9e99
                                               : std::abs(c - t) / std::abs(t));
    }
    write_moment_report_json(out_dir + "/moments.json", report);
    r.artifacts.push_back("moments.json");

    if (fit.resolved) {
      // A validated closed form: confirm the density itself by quadrature.
      MeasureSpec candidate;
      candidate.label = "quadratic-candidate";
      const double p = fit.p, a = fit.a, c = fit.c, s = fit.s;
      candidate.density = [p, a, c, s](double rr) {
        if (rr <= 0.0) return 0.0;
        return std::pow(rr, p) * kummer_phi(a, c, -s * rr * rr);
      };
      const MomentReport qr = verify_measure_moments(
          candidate, quadratic_moments(eps, 4), 1e-8);
      double worst = 0.0;
      for (double e : qr.rel_error) worst = std::max(worst, e);
      gate(r, "candidate_moment_rel_error_max", worst, 1e-4);
    }
    r.finalize();
    if (!fit.resolved) r.status = ReportStatus::Unresolved;
    return;
  }
  // kummer
  const std::vector<std::array<double, 3>> triples =
      spec.params.kummer_triples.value_or(
          std::vector<std::array<double, 3>>{
              {4.0, 1.5, 3.0}, {3.0, 1.0, 2.0}, {5.0, 2.5, 3.5}});
  double worst = 0.0;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const double err =
        kummer_mellin_check(triples[i][0], triples[i][1], triples[i][2]);
    info(r, "kummer_rel_error_" + std::to_string(i), err);
    worst = std::max(worst, err);
  }
  gate(r, "kummer_rel_error_max", worst, 1e-6);
}

}  // namespace

Report execute(const ProblemSpec& spec, const std::string& out_dir) {
  Report r;
  try {
    switch (spec.mode) {
      case Mode::AlgebraVerify:
        run_algebra_verify(spec, r);
        r.finalize();
        break;
      case Mode::CsBuild: {
        LowestWeightRep rep;
        run_cs_common(spec, r, out_dir, rep);
        r.finalize();
        break;
      }
      case Mode::CsStats: {
        LowestWeightRep rep;
        const CoherentState state = run_cs_common(spec, r, out_dir, rep);
        run_cs_stats(spec, r, state, rep);
        r.finalize();
        break;
      }
      case Mode::Realize:
        run_realize(spec, r);
        r.finalize();
        break;
      case Mode::MeasureCheck:
        run_measure_check(spec, r, out_dir);
        if (r.status == ReportStatus::Fail) r.finalize();
        break;
    }
  } catch (const Error& e) {
    r.metrics.clear();
    r.thresholds.clear();
    r.metrics["error_" + e.name()] = 1.0;
    r.status = ReportStatus::Fail;
  }

  std::ofstream out(out_dir + "/report.json");
  if (!out) throw Error("cannot write report to " + out_dir);
  out << r.to_json();
  return r;
}

}  // namespace polycs
