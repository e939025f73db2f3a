// distgeom: run verification suites and integrations on built-in scenarios.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "distgeom/checks.hpp"
#include "json.hpp"

using namespace distgeom;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad --grid entry: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("bad --grid entry: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--grid needs at least one node count");
  return out;
}

int emit(const RunOutput& run, const std::string& report_path) {
  for (const auto& note : run.notes) std::cerr << note << "\n";
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  bool ok = true;
  for (const auto& r : run.reports) {
    const auto j = to_json(r);
    std::cout << j.dump() << "\n";
    all.push_back(j);
    ok = ok && r.pass;
  }
  std::cout.flush();
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) {
      std::cerr << "cannot write report file " << report_path << "\n";
      return kExitUsage;
    }
    f << all.dump(2) << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

ScenarioManifold scenario_or_usage(const std::string& name) {
  bool known = false;
  for (const auto& n : scenario_names()) known = known || n == name;
  if (!known) throw UsageError("unknown scenario: " + name);
  return load_scenario(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution geometry checks on built-in scenario manifolds"};
  app.require_subcommand(1);

  std::string scenario;
  std::vector<std::string> checks;
  int points = 200;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  std::string which = "stokes";
  std::string grid = "64";
  std::string report;

  auto* verify = app.add_subcommand("verify", "pointwise identity checks at seeded samples");
  verify->add_option("--scenario", scenario, "scenario name")->required();
  verify->add_option("--check", checks, "check name (repeatable)")->take_all();
  verify->add_option("--points", points, "number of sample points")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol", tol, "normalised tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--report", report, "also write the reports as a JSON array");

  auto* integrate = app.add_subcommand("integrate", "quadrature checks over the closed manifold");
  integrate->add_option("--scenario", scenario, "scenario name")->required();
  integrate->add_option("--which", which, "stokes or formula")
      ->check(CLI::IsMember({"stokes", "formula"}));
  integrate->add_option("--grid", grid, "nodes per axis, N or N,N,...");
  integrate->add_option("--seed", seed, "random seed");
  integrate->add_option("--tol", tol, "normalised tolerance")->check(CLI::PositiveNumber);
  integrate->add_option("--report", report, "also write the reports as a JSON array");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const ScenarioManifold s = scenario_or_usage(scenario);
    if (verify->parsed()) {
      for (const auto& c : checks)
        if (!is_check_name(c)) throw UsageError("unknown check: " + c);
      if (checks.empty()) checks = applicable_checks(s);
      VerifyOptions opt;
      opt.points = points;
      opt.seed = seed;
      opt.tol = tol;
      return emit(run_verify(s, checks, opt), report);
    }
    IntegrateOptions opt;
    opt.which = which == "stokes" ? IntegralKind::stokes : IntegralKind::formula;
    opt.grid = parse_grid(grid);
    opt.seed = seed;
    opt.tol = tol;
    return emit(run_integrate(s, opt), report);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
