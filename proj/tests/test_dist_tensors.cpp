#include "doctest.h"

#include "distgeom/dist_tensors.hpp"
#include "distgeom/scenarios.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

// Allowed scenarios with self-adjoint pairs.
std::vector<ScenarioManifold> allowed_scenarios() {
  return {flat_torus_projectors(2, 1), warped_torus(sine_profile()),
          scaled_identity(warped_torus(sine_profile()), 2.0), einstein_s3xt2()};
}

Vec<double> at_u(const Chart& c, double u) {
  Vec<double> x(c.dim);
  x[0] = u;
  x[1] = 0.3;
  return x;
}

}  // namespace

TEST_CASE("B tensors on the warped torus") {
  const auto s = warped_torus(sine_profile());
  // ∇_{∂v} ∂u = w'(u) ∂v, so B2(∂u, ∂v) = w' ∂v; w' = cos u.
  for (double u : {0.0, 0.4, 2.0}) {
    const auto b = b_tensors(s.pair, s.chart, at_u(s.chart, u), Vec<double>{1.0, 0.0},
                             Vec<double>{0.0, 1.0});
    CHECK(b.b2[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.b2[1] == doctest::Approx(std::cos(u)).epsilon(1e-12));
    // ∇_{∂u} ∂v = w' ∂v has no ∂u part, so B1(∂v, ∂u) = 0.
    CHECK(max_abs(b.b1) < 1e-12);
  }
}

TEST_CASE("self-adjoint pairs have B = hat B = check B") {
  std::mt19937_64 rng(11);
  for (const auto& s : allowed_scenarios()) {
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(s.chart, rng);
      const auto X = trig_field(s.chart.dim, rng);
      const auto Y = trig_field(s.chart.dim, rng);
      const auto b = b_tensors(s.pair, s.chart, x, X, Y);
      CHECK(max_abs(b.b1 - b.hb1) < 1e-10);
      CHECK(max_abs(b.b1 - b.cb1) < 1e-10);
      CHECK(max_abs(b.b2 - b.hb2) < 1e-10);
      CHECK(max_abs(b.b2 - b.cb2) < 1e-10);
    }
  }
}

TEST_CASE("B and divergence identities on allowed pairs") {
  std::mt19937_64 rng(12);
  for (const auto& s : allowed_scenarios()) {
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(s.chart, rng);
      const auto r = lemma1_residual(s.pair, s.chart, x, trig_field(s.chart.dim, rng),
                                     trig_field(s.chart.dim, rng));
      for (const auto& res : r.residual) CHECK(res.normalized() < 1e-8);
    }
  }
}

TEST_CASE("codazzi identity on allowed pairs with non-constant arguments") {
  std::mt19937_64 rng(13);
  for (const auto& s : allowed_scenarios()) {
    const int n = s.chart.dim;
    for (int k = 0; k < 4; ++k) {
      const auto x = random_point(s.chart, rng);
      const auto r = codazzi_residual(s.pair, s.chart, x, trig_field(n, rng), trig_field(n, rng),
                                      trig_field(n, rng), trig_field(n, rng));
      CHECK(r.normalized() < 1e-7);
    }
  }
}

TEST_CASE("R^P matches the classical curvature for orthoprojectors") {
  std::mt19937_64 rng(14);
  const auto s = warped_torus(sine_profile());
  for (int k = 0; k < 10; ++k) {
    const auto x = random_point(s.chart, rng);
    const auto Y = random_vec(2, rng), X1 = random_vec(2, rng), X2 = random_vec(2, rng),
               Z = random_vec(2, rng);
    const auto v = tsr_tensors(s.pair, s.chart, x, constant_field(Y), constant_field(X1),
                               constant_field(X2), constant_field(Z));
    const Mat<double> P1 = s.pair.p1(x), P2 = s.pair.p2(x);
    const double classical = riemann(s.chart, x).eval(P2 * Y, P1 * X1, P1 * X2, P2 * Z);
    CHECK(std::abs(v.rp - classical) < 1e-8);
  }
}

TEST_CASE("codazzi terms are tensorial") {
  std::mt19937_64 rng(15);
  const auto s = warped_torus(sine_profile());
  const ScalarField f([](const auto& x) { return 1.5 + sin(x[0] + 2.0 * x[1]); });
  for (int k = 0; k < 4; ++k) {
    const auto x = random_point(s.chart, rng);
    const auto Y = trig_field(2, rng), X1 = trig_field(2, rng), X2 = trig_field(2, rng),
               Z = trig_field(2, rng);
    const auto base = tsr_tensors(s.pair, s.chart, x, Y, X1, X2, Z);
    const double fx = f(x);
    const auto sx1 = tsr_tensors(s.pair, s.chart, x, Y, f * X1, X2, Z);
    const auto sy = tsr_tensors(s.pair, s.chart, x, f * Y, X1, X2, Z);
    CHECK(sx1.rp == doctest::Approx(fx * base.rp).epsilon(1e-9));
    CHECK(sy.rp == doctest::Approx(fx * base.rp).epsilon(1e-9));
    CHECK(sx1.sum() == doctest::Approx(fx * base.sum()).epsilon(1e-9));
  }
}

TEST_CASE("warped torus invariants at u = 0") {
  const auto s = warped_torus(sine_profile());
  const auto inv = dist_invariants(s.pair, s.chart, at_u(s.chart, 0.0));
  // Gauss curvature -(w'' + w'^2) = -1; ∂v curves have geodesic curvature w' = 1.
  CHECK(inv.smix == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(inv.H2_sq == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(inv.h2_sq == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(inv.h1_sq) < 1e-12);
  CHECK(std::abs(inv.H1_sq) < 1e-12);
  CHECK(std::abs(inv.t1_sq) < 1e-12);
  CHECK(std::abs(inv.t2_sq) < 1e-12);
  CHECK(inv.walczak_rhs() == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("warped torus mixed curvature matches the Gauss curvature everywhere") {
  const auto s = warped_torus(sine_profile());
  for (double u : {0.3, 1.1, 2.5, 4.0, 5.9}) {
    const auto inv = dist_invariants(s.pair, s.chart, at_u(s.chart, u));
    const double k = std::sin(u) - std::cos(u) * std::cos(u);
    CHECK(inv.smix == doctest::Approx(k).epsilon(1e-10));
    CHECK(inv.H2_sq == doctest::Approx(std::cos(u) * std::cos(u)).epsilon(1e-10));
  }
}

TEST_CASE("invariants do not depend on the frame") {
  std::mt19937_64 rng(16);
  for (const auto& s : {einstein_s3xt2(), warped_torus(sine_profile()), hopf_contact_s3()}) {
    const auto x = random_point(s.chart, rng);
    Mat<double> q(s.chart.dim);
    {
      Eigen::MatrixXd a(s.chart.dim, s.chart.dim);
      for (int i = 0; i < s.chart.dim; ++i)
        for (int j = 0; j < s.chart.dim; ++j)
          a(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
      const Eigen::MatrixXd qq = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
      for (int i = 0; i < s.chart.dim; ++i)
        for (int j = 0; j < s.chart.dim; ++j) q(i, j) = qq(i, j);
    }
    const auto a = dist_invariants(s.pair, s.chart, x);
    const auto b = dist_invariants(s.pair, s.chart, x, q);
    CHECK(std::abs(a.smix - b.smix) < 1e-9 * (1 + std::abs(a.smix)));
    CHECK(std::abs(a.h1_sq - b.h1_sq) < 1e-9 * (1 + std::abs(a.h1_sq)));
    CHECK(std::abs(a.h2_sq - b.h2_sq) < 1e-9 * (1 + std::abs(a.h2_sq)));
    CHECK(std::abs(a.t1_sq - b.t1_sq) < 1e-9 * (1 + std::abs(a.t1_sq)));
    CHECK(std::abs(a.t2_sq - b.t2_sq) < 1e-9 * (1 + std::abs(a.t2_sq)));
    CHECK(std::abs(a.H1_sq - b.H1_sq) < 1e-9 * (1 + std::abs(a.H1_sq)));
    CHECK(std::abs(a.H2_sq - b.H2_sq) < 1e-9 * (1 + std::abs(a.H2_sq)));
  }
}

TEST_CASE("scaling the pair by a constant") {
  const double c = 2.0;
  const auto base = warped_torus(sine_profile());
  const auto scaled = scaled_identity(base, c);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 4; ++k) {
    const auto x = random_point(base.chart, rng);
    const auto a = dist_invariants(base.pair, base.chart, x);
    const auto b = dist_invariants(scaled.pair, scaled.chart, x);
    // five P slots in R^P and in each P-norm
    CHECK(b.smix == doctest::Approx(std::pow(c, 5) * a.smix).epsilon(1e-10));
    CHECK(b.h2_sq == doctest::Approx(std::pow(c, 5) * a.h2_sq).epsilon(1e-10));
    CHECK(b.H2_sq == doctest::Approx(std::pow(c, 5) * a.H2_sq).epsilon(1e-10));
    const auto X = random_vec(2, rng), Y = random_vec(2, rng);
    const auto ba = b_tensors(base.pair, base.chart, x, X, Y);
    const auto bb = b_tensors(scaled.pair, scaled.chart, x, X, Y);
    CHECK(max_abs(bb.b2 - std::pow(c, 3) * ba.b2) < 1e-10);
    const auto F = trig_field(2, rng);
    const double d1 = div_p(base.pair.p1 + base.pair.p2, base.chart, F, x);
    const double d2 = div_p(scaled.pair.p1 + scaled.pair.p2, scaled.chart, F, x);
    CHECK(d2 == doctest::Approx(c * c * d1).epsilon(1e-10));
  }
  const auto same = scaled_identity(base, 1.0);
  const auto x = at_u(base.chart, 0.7);
  CHECK(dist_invariants(same.pair, same.chart, x).smix ==
        doctest::Approx(dist_invariants(base.pair, base.chart, x).smix).epsilon(1e-14));
  CHECK_THROWS_AS(scaled_identity(base, 0.0), UsageError);
}

TEST_CASE("div_P forms agree, including non-self-adjoint P") {
  std::mt19937_64 rng(18);
  auto check = [&](const EndoField& P, const Chart& chart) {
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(chart, rng);
      const auto F = trig_field(chart.dim, rng);
      const auto f = div_p_forms(P, chart, F, x);
      CHECK(rel_err(f.trace, f.coordinate) < 1e-10);
      const double fd = div_p_fd(P, chart, [&F](const Vec<double>& y) { return F(y); }, x);
      CHECK(rel_err(f.trace, fd) < 1e-8);
    }
  };
  check(constant_endo(random_mat(3, rng)), skew_torus());
  const auto h = hopf_contact_s3();
  check(h.pair.p1 + h.pair.p2, h.chart);
  const auto e = einstein_s3xt2();
  check(e.pair.p1 + e.pair.p2, e.chart);
  // P = c I gives c^2 div X.
  const Chart sk = skew_torus();
  for (int k = 0; k < 3; ++k) {
    const auto x = random_point(sk, rng);
    const auto F = trig_field(3, rng);
    const double c = 1.7;
    CHECK(div_p(constant_endo(c * Mat<double>::identity(3)), sk, F, x) ==
          doctest::Approx(c * c * div_vector(sk, F, x)).epsilon(1e-12));
  }
}

TEST_CASE("divergence product rule residuals where div(PP*) = 0") {
  std::mt19937_64 rng(19);
  const ScalarField f([](const auto& x) { return 1.0 + 0.5 * sin(x[0]) * cos(x[1]); });
  for (const auto& s : {einstein_s3xt2(), hopf_contact_s3(), warped_torus(sine_profile())}) {
    const EndoField P = s.pair.p1 + s.pair.p2;
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(s.chart, rng);
      const auto r = prop3_residuals(P, s.chart, trig_field(s.chart.dim, rng), f, x);
      CHECK(max_abs(r.div_pps) < 1e-9);
      CHECK(r.vs_div.normalized() < 1e-8);
      CHECK(r.vs_inner.normalized() < 1e-8);
      CHECK(r.leibniz.normalized() < 1e-8);
    }
  }
}

TEST_CASE("divergence product rule discrepancy for P = f id equals X(f^2)") {
  std::mt19937_64 rng(20);
  const auto s = scaled_by_function();
  const EndoField P = s.pair.p1 + s.pair.p2;
  const ScalarField one([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    return S(1.0);
  });
  for (int k = 0; k < 5; ++k) {
    const auto x = random_point(s.chart, rng);
    const auto X = trig_field(2, rng);
    const auto r = prop3_residuals(P, s.chart, X, one, x);
    // f = 2 + sin u: X(f^2) = 2 f cos u X^u.
    const double fu = 2.0 + std::sin(x[0]);
    const double expected = std::abs(2.0 * fu * std::cos(x[0]) * X(x)[0]);
    CHECK(r.vs_div.abs == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::abs(r.div_pps_x) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("pointwise walczak identity") {
  std::mt19937_64 rng(21);
  for (const auto& s : allowed_scenarios()) {
    for (int k = 0; k < 3; ++k) {
      const auto x = random_point(s.chart, rng);
      const auto w = walczak_pointwise_residual(s.pair, s.chart, x);
      CHECK(w.residual.normalized() < 1e-6);
    }
  }
  const auto s = warped_torus(sine_profile());
  const auto w = walczak_pointwise_residual(s.pair, s.chart, at_u(s.chart, 0.0));
  CHECK(w.lhs == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("divergence of the mean curvature by AD and by differences") {
  std::mt19937_64 rng(22);
  const auto s = warped_torus(sine_profile());
  const DistFields f(s.chart, s.pair);
  const Mat<double> id = Mat<double>::identity(2);
  const VectorField H = f.H1(id) + f.H2(id);
  for (int k = 0; k < 4; ++k) {
    const auto x = random_point(s.chart, rng);
    const double fd = div_p_fd(f.p_sum(), s.chart, [&H](const Vec<double>& y) { return H(y); }, x);
    CHECK(rel_err(fd, div_vector(s.chart, H, x)) < 1e-8);
    CHECK(fd == doctest::Approx(std::sin(x[0]) - std::cos(x[0]) * std::cos(x[0])).epsilon(1e-8));
  }
}

TEST_CASE("trace lemmas on self-adjoint scenarios") {
  std::mt19937_64 rng(23);
  for (const auto& s : allowed_scenarios()) {
    for (int k = 0; k < 2; ++k) {
      const auto x = random_point(s.chart, rng);
      const auto t = trace_lemma_residuals(s.pair, s.chart, x);
      for (const auto& r : t.residual) CHECK(r.normalized() < 1e-7);
    }
  }
}

TEST_CASE("P-norm does not depend on the chosen preimage") {
  std::mt19937_64 rng(24);
  const auto s = einstein_s3xt2();
  const auto x = random_point(s.chart, rng);
  const auto inv = dist_invariants(s.pair, s.chart, x);
  const int n = s.chart.dim;
  const Mat<double> g = s.chart.metric(x);
  const Mat<double> P2 = s.pair.p2(x);
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = P2(i, j);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(p);
  double sum = 0.0;
  for (const auto& h : inv.h1) {
    Eigen::VectorXd hv(n);
    for (int i = 0; i < n; ++i) hv(i) = h[i];
    const Eigen::VectorXd v = cod.solve(hv);
    Vec<double> vv(n);
    for (int i = 0; i < n; ++i) vv[i] = v(i);
    sum += inner(g, P2 * vv, vv);
  }
  CHECK(sum == doctest::Approx(inv.h1_sq).epsilon(1e-10));
}

TEST_CASE("contact identity on the Hopf structure") {
  std::mt19937_64 rng(25);
  const auto s = hopf_contact_s3();
  for (int k = 0; k < 5; ++k) {
    const auto x = random_point(s.chart, rng);
    const auto X = random_vec(3, rng);
    const auto r = contact_identity_residual(s.contact->phi, s.contact->xi, s.chart, X, x);
    CHECK(r.structure < 1e-9);
    CHECK(r.adjoint_identity < 1e-9);
    CHECK(std::abs(r.lhs) < 1e-9);
    CHECK(std::abs(r.div_xi) < 1e-9);
  }
}

TEST_CASE("contact sign variants separate on a rescaled metric") {
  std::mt19937_64 rng(26);
  const auto s = hopf_contact_rescaled(0.4);
  double worst_plus = 0.0, best_minus = 1e300;
  for (int k = 0; k < 10; ++k) {
    const auto x = random_point(s.chart, rng);
    const auto r = contact_identity_residual(s.contact->phi, s.contact->xi, s.chart,
                                             random_vec(3, rng), x);
    worst_plus = std::max(worst_plus, r.plus.normalized());
    best_minus = std::min(best_minus, r.minus.normalized());
  }
  CHECK(worst_plus < 1e-9);
  CHECK(best_minus > 1e-6);
}

TEST_CASE("contact check rejects a broken structure") {
  const auto s = hopf_contact_s3();
  const Vec<double> x{0.2, -0.4, 0.5};
  CHECK_THROWS_AS(contact_identity_residual(2.0 * s.contact->phi, s.contact->xi, s.chart,
                                            Vec<double>{1.0, 0.0, 0.0}, x),
                  StructuralError);
}
