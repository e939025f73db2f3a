#include "distgeom/checks.hpp"

#include <cstdlib>

#include <omp.h>

#include "doctest.h"

using namespace distgeom;

namespace {

std::string dump_all(const RunOutput& run) {
  std::string s;
  for (const auto& r : run.reports) s += to_json(r).dump() + "\n";
  return s;
}

}  // namespace

TEST_CASE("default checks pass on every named scenario") {
  VerifyOptions opt;
  opt.points = 12;
  for (const auto& name : scenario_names()) {
    const auto s = make_scenario(name);
    const auto run = run_verify(s, applicable_checks(s), opt);
    CHECK(run.reports.size() == applicable_checks(s).size());
    for (const auto& r : run.reports) CHECK_MESSAGE(r.pass, name << " " << r.check);
  }
}

TEST_CASE("applicability follows the flags") {
  const auto h = make_scenario("hopf-s3");
  const auto hc = applicable_checks(h);
  CHECK(hc == std::vector<std::string>{"pair", "prop3", "contact"});
  const auto w = make_scenario("warped-torus");
  const auto wc = applicable_checks(w);
  CHECK(wc.size() == 7);
  CHECK(std::find(wc.begin(), wc.end(), "contact") == wc.end());
}

TEST_CASE("explicitly requested inapplicable checks do not pass") {
  VerifyOptions opt;
  opt.points = 4;
  const auto run = run_verify(make_scenario("hopf-s3"), {"codazzi"}, opt);
  REQUIRE(run.reports.size() == 1);
  CHECK_FALSE(run.reports[0].pass);
  CHECK(run.reports[0].samples == 0);
  CHECK_FALSE(run.notes.empty());
}

TEST_CASE("unknown check is a usage error") {
  VerifyOptions opt;
  CHECK_THROWS_AS(run_verify(make_scenario("warped-torus"), {"unknown"}, opt), UsageError);
}

TEST_CASE("counterexample fails the allowedness check") {
  VerifyOptions opt;
  opt.points = 10;
  auto s = warped_torus_unbalanced();
  s.expected.allowed = true;  // force the check to run
  const auto run = run_verify(s, {"allowed"}, opt);
  CHECK_FALSE(run.reports[0].pass);
  CHECK(run.reports[0].max_normalized > 1e-3);
}

TEST_CASE("contact variants: exactly one is consistent") {
  const auto cv = contact_disambiguation(42, 20, 1e-6);
  REQUIRE(cv.consistent.size() == 1);
  CHECK(cv.consistent[0] == "plus");
  CHECK(cv.minus > 1e-3);
}

TEST_CASE("grid resolution rules") {
  const auto e = make_scenario("einstein-s3xt2");
  CHECK(resolve_grid(e, IntegralKind::stokes, {32}) == std::vector<int>{12, 12, 6, 12, 6});
  CHECK(resolve_grid(e, IntegralKind::stokes, {8, 8, 8, 8, 8}).size() == 5);
  CHECK_THROWS_AS(resolve_grid(e, IntegralKind::stokes, {4}), UsageError);
  CHECK_THROWS_AS(resolve_grid(e, IntegralKind::stokes, {8, 8}), UsageError);
  const auto w = make_scenario("warped-torus");
  CHECK(resolve_grid(w, IntegralKind::formula, {16}) == std::vector<int>{16, 16});
}

TEST_CASE("integrate emits the run and its refinement") {
  IntegrateOptions opt;
  opt.which = IntegralKind::formula;
  opt.grid = {32};
  const auto run = run_integrate(make_scenario("warped-torus"), opt);
  REQUIRE(run.reports.size() == 2);
  CHECK(run.reports[0].check == "formula");
  CHECK(run.reports[0].pass);
  CHECK(run.reports[0].degenerate == false);
  CHECK(run.reports[1].check == "formula-refinement");
  CHECK(run.reports[1].grid == std::vector<int>{16, 16});

  const auto h = run_integrate(make_scenario("hopf-s3"), opt);
  REQUIRE(h.reports.size() == 1);
  CHECK_FALSE(h.reports[0].pass);
}

TEST_CASE("reports do not depend on thread count or execution mode") {
  setenv("DISTGEOM_REPRODUCIBLE", "1", 1);
  const auto s = make_scenario("warped-torus");
  VerifyOptions opt;
  opt.points = 16;
  const auto checks = applicable_checks(s);
  opt.exec = Exec::serial;
  const std::string serial = dump_all(run_verify(s, checks, opt));
  opt.exec = Exec::parallel;
  omp_set_num_threads(3);
  const std::string par3 = dump_all(run_verify(s, checks, opt));
  omp_set_num_threads(1);
  const std::string par1 = dump_all(run_verify(s, checks, opt));
  CHECK(serial == par3);
  CHECK(serial == par1);
  omp_set_num_threads(omp_get_num_procs());
  unsetenv("DISTGEOM_REPRODUCIBLE");
}
