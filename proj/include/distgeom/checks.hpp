#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distgeom/kernels.hpp"
#include "distgeom/report.hpp"
#include "distgeom/scenarios.hpp"

namespace distgeom {

struct VerifyOptions {
  int points = 200;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  Exec exec = Exec::parallel;
};

struct RunOutput {
  std::vector<ResidualReport> reports;
  std::vector<std::string> notes;  ///< human-readable remarks for stderr
};

const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);
/// Checks whose hypotheses hold for the scenario's flags.
std::vector<std::string> applicable_checks(const ScenarioManifold& s);
bool check_applicable(const ScenarioManifold& s, const std::string& check);

/// One report per requested check, in request order. An inapplicable check
/// yields pass = false and a note.
RunOutput run_verify(const ScenarioManifold& s, const std::vector<std::string>& checks,
                     const VerifyOptions& opt);

/// Which of the two sign variants of the contact closed form agree with
/// div(φφ*) on a conformally rescaled Hopf structure.
struct ContactVariants {
  double plus = 0.0;   ///< worst normalised residual, -<∇_ξ ξ + (div ξ) ξ, X>
  double minus = 0.0;  ///< worst normalised residual, -<∇_ξ ξ - (div ξ) ξ, X>
  std::vector<std::string> consistent;
};
ContactVariants contact_disambiguation(std::uint64_t seed, int points, double tol,
                                       Exec exec = Exec::parallel);

struct IntegrateOptions {
  IntegralKind which = IntegralKind::stokes;
  /// One entry: nominal resolution mapped per scenario; otherwise per-axis counts.
  std::vector<int> grid{64};
  std::uint64_t seed = 42;
  double tol = 1e-6;
  Exec exec = Exec::parallel;
};

/// The requested resolution, then a refinement report comparing it with the
/// grid at half the node count per axis.
RunOutput run_integrate(const ScenarioManifold& s, const IntegrateOptions& opt);
std::vector<int> resolve_grid(const ScenarioManifold& s, IntegralKind which,
                              const std::vector<int>& grid);

/// True when runtime_ms should be reported as 0 (DISTGEOM_REPRODUCIBLE=1).
bool reproducible_timing();

}  // namespace distgeom
