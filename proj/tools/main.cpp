// deformed-cs: command-line front end.
//
//   deformed-cs <mode> --spec FILE [--out DIR] [--preset NAME]
//                      [--override key=value ...]
//
// Modes: algebra-verify, cs-build, cs-stats, realize, measure-check.
// Exit codes: 0 pass, 1 fail, 2 spec error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polycs/errors.hpp"
#include "polycs/io.hpp"
#include "polycs/problem.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw polycs::ParseError("cannot open spec file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// key=value with dotted paths, e.g. params.alpha=[0.5,0.5] or algebra.dim=96.
// Values are parsed as JSON fragments, falling back to a plain string.
void apply_override(json& root, const std::string& expr) {
  const std::size_t eq = expr.find('=');
  if (eq == std::string::npos || eq == 0)
    throw polycs::ParseError("override must look like key=value: " + expr);
  const std::string path = expr.substr(0, eq);
  const std::string value_text = expr.substr(eq + 1);

  json value = json::parse(value_text, nullptr, false);
  if (value.is_discarded()) value = value_text;

  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw polycs::ParseError("bad override path: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

void print_report(const polycs::Report& report, const std::string& out_dir) {
  const char* status =
      report.status == polycs::ReportStatus::Pass
          ? "pass"
          : (report.status == polycs::ReportStatus::Unresolved ? "unresolved"
                                                               : "fail");
  std::cout << "status: " << status << "\n";
  for (const auto& [key, value] : report.metrics) {
    std::cout << "  " << key << " = " << polycs::format_double(value);
    const auto it = report.thresholds.find(key);
    if (it != report.thresholds.end())
      std::cout << "  (threshold " << polycs::format_double(it->second) << ")";
    std::cout << "\n";
  }
  for (const std::string& artifact : report.artifacts)
    std::cout << "  wrote " << out_dir << "/" << artifact << "\n";
  std::cout << "report: " << out_dir << "/report.json\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent states of polynomially deformed su(1,1)/su(2) algebras"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = ".";
  std::string preset;
  std::vector<std::string> overrides;

  const std::vector<std::pair<std::string, std::string>> modes = {
      {"algebra-verify", "build a truncated rep and verify its identities"},
      {"cs-build", "construct an annihilation-operator coherent state"},
      {"cs-stats", "coherent state plus photon statistics"},
      {"realize", "build a concrete multiphoton realization and verify it"},
      {"measure-check", "resolution-of-identity moment checks"},
  };
  for (const auto& [name, desc] : modes) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--spec", spec_path, "problem spec JSON file");
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_option("--preset", preset, "named built-in spec");
    sub->add_option("--override", overrides,
                    "key=value spec overrides (dotted paths, JSON values)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string mode = app.get_subcommands().front()->get_name();

  try {
    std::string text;
    if (!spec_path.empty())
      text = read_file(spec_path);
    else if (!preset.empty())
      text = polycs::preset_spec_json(mode, preset);
    else
      throw polycs::ParseError("need --spec FILE or --preset NAME (presets: " +
                               [&] {
                                 std::string s;
                                 for (const auto& n : polycs::preset_names(mode))
                                   s += (s.empty() ? "" : ", ") + n;
                                 return s;
                               }() + ")");

    json root = json::parse(text, nullptr, false);
    if (root.is_discarded()) throw polycs::ParseError("malformed JSON spec");
    if (!root.contains("mode")) root["mode"] = mode;
    for (const std::string& o : overrides) apply_override(root, o);

    const polycs::ProblemSpec spec = polycs::parse_problem_spec(root.dump());
    if (polycs::mode_name(spec.mode) != mode)
      throw polycs::ParseError("spec mode \"" + polycs::mode_name(spec.mode) +
                               "\" does not match subcommand \"" + mode + "\"");

    std::filesystem::create_directories(out_dir);
    const polycs::Report report = polycs::execute(spec, out_dir);
    print_report(report, out_dir);
    return polycs::exit_code(report);
  } catch (const polycs::ParseError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const polycs::DomainError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const polycs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
