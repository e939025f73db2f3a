#include "distgeom/quadrature.hpp"

#include <stdexcept>

#include "distgeom/chart_geometry.hpp"
#include "distgeom/kernels.hpp"
#include "distgeom/scenarios.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace testsupport;

TEST_CASE("volumes and simple integrals") {
  const Chart t2 = euclidean(2);
  const QuadratureGrid g(periodic_box(t2), {32, 32});
  CHECK(volume(t2, g) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  const ScalarField su([](const auto& x) { return sin(x[0]); });
  CHECK(std::abs(integrate(t2, su, g)) < 1e-13);
  // sin^2 x cos^2 y integrates to π · π.
  const ScalarField sc([](const auto& x) { return sin(x[0]) * sin(x[0]) * cos(x[1]) * cos(x[1]); });
  CHECK(integrate(t2, sc, g) == doctest::Approx(kPi * kPi).epsilon(1e-12));

  const auto s3 = hopf_contact_s3();
  const QuadratureGrid gs(s3.param, {64, 64, 64});
  CHECK(std::abs(volume(s3.chart, gs) / (2.0 * kPi * kPi) - 1.0) < 1e-8);
}

TEST_CASE("Gauss axes integrate polynomials exactly") {
  Parametrization p;
  p.axes.push_back({{0.0, 1.0}, AxisRule::gauss});
  p.map = [](const Vec<double>& t, double& jac) {
    jac = 1.0;
    return t;
  };
  Chart line;
  line.dim = 1;
  line.domain = {{0.0, 1.0}};
  line.periodic = {false};
  line.metric = constant_endo(Mat<double>::identity(1));
  const QuadratureGrid g(p, {3});
  const PointFunction x4 = [](const Vec<double>& x) { return std::pow(x[0], 4); };
  CHECK(integrate(line, x4, g) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("grid construction errors") {
  const Chart t2 = euclidean(2);
  CHECK_THROWS_AS(QuadratureGrid(periodic_box(t2), {8}), UsageError);
  CHECK_THROWS_AS(QuadratureGrid(periodic_box(t2), {8, 0}), UsageError);
  CHECK_THROWS_AS(periodic_box(round_s3()), UsageError);
}

TEST_CASE("stokes with P = identity is the classical theorem") {
  std::mt19937_64 rng(31);
  const Chart t2 = euclidean(2);
  const QuadratureGrid g(periodic_box(t2), {64, 64});
  const auto X = trig_field(2, rng);
  const EndoField id = constant_endo(Mat<double>::identity(2));
  const auto r = stokes_check(id, t2, X, g);
  CHECK(r.report.max_normalized < 1e-12);
  CHECK(r.report.pass);
  const auto rc = stokes_check(3.0 * id, t2, X, g);
  CHECK(std::abs(rc.integral) < 1e-11);

  for (const auto& name : scenario_names()) {
    const auto s = make_scenario(name);
    const QuadratureGrid grid(s.param, s.grid_counts(IntegralKind::stokes, 32));
    const EndoField I = constant_endo(Mat<double>::identity(s.chart.dim));
    const auto res = stokes_check(I, s.chart, s.random_field(5), grid);
    CHECK_MESSAGE(res.report.max_normalized < 1e-6, name);
  }
}

TEST_CASE("stokes on scenario pairs converges under refinement") {
  const auto s = warped_torus(sine_profile());
  const EndoField P = s.pair.p1 + s.pair.p2;
  const auto X = s.random_field(9);
  const double coarse = std::abs(stokes_check(P, s.chart, X, QuadratureGrid(s.param, {6, 6})).integral);
  const double fine = std::abs(stokes_check(P, s.chart, X, QuadratureGrid(s.param, {12, 12})).integral);
  CHECK(coarse > 1e-8);
  CHECK(fine < 1e-3 * coarse);
}

TEST_CASE("stokes reports a failed precondition") {
  const auto s = warped_torus_unbalanced();
  const QuadratureGrid g(s.param, {16, 16});
  const auto r = stokes_check(s.pair.p1 + s.pair.p2, s.chart, s.random_field(1), g);
  CHECK_FALSE(r.precondition_ok);
  CHECK_FALSE(r.report.pass);
}

TEST_CASE("integral formula: degenerate and non-degenerate cases") {
  const auto flat = flat_torus_projectors(1, 1);
  const auto rf = integral_formula_check(flat.pair, flat.chart, QuadratureGrid(flat.param, {16, 16}));
  CHECK(rf.degenerate);
  CHECK(rf.report.pass);
  CHECK(rf.max_pointwise == 0.0);

  const auto w = warped_torus(sine_profile());
  const auto rw = integral_formula_check(w.pair, w.chart, QuadratureGrid(w.param, {128, 128}));
  CHECK_FALSE(rw.degenerate);
  CHECK(rw.report.pass);
  CHECK(std::abs(rw.integral) <= 1e-8 * rw.abs_integral);
  // ∫∫ |sin u - cos^2 u| e^{sin u} du dv is far from zero.
  CHECK(rw.abs_integral > 1.0);

  const auto h = hopf_contact_s3();
  const auto rh = integral_formula_check(h.pair, h.chart, QuadratureGrid(h.param, {8, 8, 8}));
  CHECK_FALSE(rh.precondition_ok);
  CHECK_FALSE(rh.report.pass);
}

TEST_CASE("serial and parallel integration agree bitwise") {
  const auto s = einstein_s3xt2();
  const QuadratureGrid g(s.param, {6, 6, 4, 6, 4});
  const auto X = s.random_field(3);
  const EndoField P = s.pair.p1 + s.pair.p2;
  const auto a = stokes_check(P, s.chart, X, g, 1e-6, {}, Exec::serial);
  const auto b = stokes_check(P, s.chart, X, g, 1e-6, {}, Exec::parallel);
  CHECK(a.integral == b.integral);
  CHECK(a.abs_integral == b.abs_integral);
  CHECK(a.volume == b.volume);
}

TEST_CASE("kernels: pairwise sums and parallel maps") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(kernels::pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-14));
  CHECK(kernels::pairwise_sum(nullptr, 0) == 0.0);

  const auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)); };
  CHECK(kernels::map_serial(257, f) == kernels::map_omp(257, f));

  const auto thrower = [](std::size_t i) -> int {
    if (i == 17 || i == 90) throw std::runtime_error("at " + std::to_string(i));
    return 0;
  };
  try {
    kernels::map_omp(128, thrower);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "at 17");
  }
}
