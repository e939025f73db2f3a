#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "distgeom/endo_fields.hpp"
#include "distgeom/quadrature.hpp"

namespace distgeom {

struct ContactData {
  EndoField phi;
  VectorField xi;  ///< η is g(ξ, ·)
};

struct ExpectedFlags {
  bool orthogonal = true;
  bool self_adjoint = true;
  bool allowed = true;
  bool div_pp_star_zero = true;
  bool div_p_squared_zero = true;
  /// Only meaningful for self-adjoint allowed pairs.
  std::optional<bool> integrand_degenerate;
};

enum class IntegralKind { stokes, formula };

struct ScenarioManifold {
  std::string name;
  Chart chart;
  EndoPair pair;
  std::optional<ContactData> contact;
  ExpectedFlags expected;
  std::string notes;

  /// Compact integration coordinates for the chart.
  Parametrization param;
  /// Per-axis node counts for a nominal resolution n.
  std::function<std::vector<int>(IntegralKind, int n)> grid_counts;
  /// Seeded smooth vector field, smooth on the whole closed manifold.
  std::function<VectorField(std::uint64_t seed)> random_field;
};

/// Profile w(u) for warped tori; evaluated on one-element vectors.
using Profile = ScalarField;
Profile sine_profile(double amplitude = 1.0);
Profile zero_profile();

ScenarioManifold flat_torus_projectors(int n1, int n2);
ScenarioManifold scaled_identity(const ScenarioManifold& base, double c);
ScenarioManifold warped_torus(const Profile& w);
ScenarioManifold einstein_s3xt2();
ScenarioManifold hopf_contact_s3();

// Not exposed on the command line.
/// (c Π_u, Π_v) on the warped torus with w = sin u; not allowed for c ≠ 1.
ScenarioManifold warped_torus_unbalanced(double c = 2.0);
/// f Π_1, f Π_2 on the flat T^2 with f = 2 + sin u; div(P^2) ≠ 0.
ScenarioManifold scaled_by_function();
/// Hopf structure on S^3 with metric e^{2f} g_round, f = eps p0, ξ rescaled to unit length.
ScenarioManifold hopf_contact_rescaled(double eps = 0.4);

/// Closed-form Einstein block values of the S^3 × T^2 scenario at u.
struct EinsteinBlocks {
  double e1 = 0.0;        ///< the closed form used by the scenario's source example
  double e1_true = 0.0;   ///< -s(6 + 3s + s^2)/(1 + s)^3, s = sin^2 u
  double e2 = -3.0;
  double a1 = 0.0;
  double a2 = 0.0;
};
EinsteinBlocks einstein_blocks(double u);

/// CLI names: flat-torus, scaled-identity, warped-torus, einstein-s3xt2, hopf-s3.
const std::vector<std::string>& scenario_names();
ScenarioManifold make_scenario(const std::string& name);

struct FlagEvidence {
  std::map<std::string, double> residual;
  std::map<std::string, bool> observed;
  std::vector<std::string> mismatches;
};

/// Recomputes every expected flag at a few seeded points. A flag is observed
/// true at residual ≤ 1e-8 and false at ≥ 1e-5; anything between is a mismatch.
FlagEvidence verify_flags(const ScenarioManifold& s, std::uint64_t seed = 7, int points = 6);

/// make_scenario followed by verify_flags; throws ScenarioError on a mismatch.
ScenarioManifold load_scenario(const std::string& name);

}  // namespace distgeom
