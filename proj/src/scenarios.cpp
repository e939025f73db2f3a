#include "distgeom/scenarios.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "distgeom/chart_geometry.hpp"
#include "distgeom/dist_tensors.hpp"
#include "distgeom/sampling.hpp"

namespace distgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class S>
using R4 = std::array<S, 4>;

Chart torus_chart(const std::string& name, int n, EndoField metric) {
  Chart c;
  c.name = name;
  c.dim = n;
  c.domain.assign(n, Interval{0.0, kTwoPi});
  c.periodic.assign(n, true);
  c.metric = std::move(metric);
  return c;
}

Mat<double> coordinate_projector(int n, int from, int to) {
  Mat<double> m(n);
  for (int i = from; i < to; ++i) m(i, i) = 1.0;
  return m;
}

// ---- stereographic S^3 -------------------------------------------------
// p = π(x) = (2x, r^2 - 1) / (r^2 + 1); σ(p) = (p0, p1, p2) / (1 - p3).

template <class S>
S radius_sq(const Vec<S>& x, int off) {
  return x[off] * x[off] + x[off + 1] * x[off + 1] + x[off + 2] * x[off + 2];
}

template <class S>
R4<S> inv_stereo(const Vec<S>& x, int off) {
  const S den = 1.0 + radius_sq(x, off);
  return {2.0 * x[off] / den, 2.0 * x[off + 1] / den, 2.0 * x[off + 2] / den,
          (den - 2.0) / den};
}

// Dσ(p) V for a tangent V, with 1 - p3 = 2 / (1 + r^2) taken from x.
template <class S>
std::array<S, 3> push_forward(const Vec<S>& x, int off, const R4<S>& p, const R4<S>& v) {
  const S d = 2.0 / (1.0 + radius_sq(x, off));
  std::array<S, 3> out;
  for (int a = 0; a < 3; ++a) out[a] = v[a] / d + p[a] * v[3] / (d * d);
  return out;
}

// Dπ(x) w.
template <class S>
R4<S> pull_back(const Vec<S>& x, int off, const std::array<S, 3>& w) {
  const S den = 1.0 + radius_sq(x, off);
  const S xw = x[off] * w[0] + x[off + 1] * w[1] + x[off + 2] * w[2];
  R4<S> out;
  for (int a = 0; a < 3; ++a) out[a] = 2.0 * w[a] / den - 4.0 * x[off + a] * xw / (den * den);
  out[3] = 4.0 * xw / (den * den);
  return out;
}

template <class S>
R4<S> times_i(const R4<S>& p) {
  return {-p[1], p[0], p[3], -p[2]};
}
template <class S>
R4<S> times_j(const R4<S>& p) {
  return {-p[2], -p[3], p[0], p[1]};
}
template <class S>
R4<S> times_k(const R4<S>& p) {
  return {-p[3], p[2], -p[1], p[0]};
}

template <class S>
S dot4(const R4<S>& a, const R4<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

template <class S>
S stereo_lambda(const Vec<S>& x, int off) {
  return 2.0 / (1.0 + radius_sq(x, off));
}

Chart round_s3_chart(const std::string& name, double eps) {
  Chart c;
  c.name = name;
  c.dim = 3;
  c.domain.assign(3, Interval{-INFINITY, INFINITY});
  c.periodic.assign(3, false);
  c.sample_box.assign(3, Interval{-2.0, 2.0});
  c.metric = EndoField([eps](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S lam = stereo_lambda(x, 0);
    S conf = lam * lam;
    if (eps != 0.0) conf = conf * exp(2.0 * eps * inv_stereo(x, 0)[0]);
    Mat<S> g(3);
    for (int i = 0; i < 3; ++i) g(i, i) = conf;
    return g;
  });
  return c;
}

// x = tan(χ/2) (sin θ cos φ, sin θ sin φ, cos θ) for t = (χ, θ, φ) at offset.
void s3_axes(Parametrization& p) {
  p.axes.push_back({{0.0, std::numbers::pi}, AxisRule::gauss});
  p.axes.push_back({{0.0, std::numbers::pi}, AxisRule::gauss});
  p.axes.push_back({{0.0, kTwoPi}, AxisRule::periodic});
}

double s3_map(const Vec<double>& t, Vec<double>& x, int off) {
  const double chi = t[off], th = t[off + 1], ph = t[off + 2];
  const double r = std::tan(0.5 * chi);
  const double c = std::cos(0.5 * chi);
  x[off] = r * std::sin(th) * std::cos(ph);
  x[off + 1] = r * std::sin(th) * std::sin(ph);
  x[off + 2] = r * std::cos(th);
  return r * r * std::sin(th) * 0.5 / (c * c);
}

Parametrization s3_param() {
  Parametrization p;
  s3_axes(p);
  p.map = [](const Vec<double>& t, double& jac) {
    Vec<double> x(3);
    jac = s3_map(t, x, 0);
    return x;
  };
  return p;
}

// ---- random smooth fields ---------------------------------------------

struct Coeffs {
  std::vector<double> v;
  Coeffs(std::uint64_t seed, std::uint64_t slot, int count) : v(count) {
    SampleRng rng(seed, 0xF1E1D, slot);
    for (double& c : v) c = rng.uniform(-1.0, 1.0);
  }
  double operator[](int i) const { return v[i]; }
};

// Trig polynomial components on coordinates [off, off + m) of an n-vector.
template <class S>
S trig_component(const Vec<S>& x, int off, int m, const Coeffs& c, int k) {
  const int stride = 2 * m + 2;
  S out(c[k * stride]);
  for (int j = 0; j < m; ++j)
    out += c[k * stride + 1 + 2 * j] * sin(x[off + j]) +
           c[k * stride + 2 + 2 * j] * cos(x[off + j]);
  out += c[k * stride + 2 * m + 1] * sin(x[off] + x[off + m - 1]);
  return out;
}

VectorField torus_field(int n, std::uint64_t seed) {
  const Coeffs c(seed, 1, n * (2 * n + 2));
  return VectorField([n, c](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    Vec<S> out(n);
    for (int k = 0; k < n; ++k) out[k] = trig_component(x, 0, n, c, k);
    return out;
  });
}

// Tangent projection of the ambient affine field A p + b on S^3, in the chart.
template <class S>
std::array<S, 3> s3_component(const Vec<S>& x, int off, const Coeffs& c) {
  const R4<S> p = inv_stereo(x, off);
  R4<S> v;
  for (int a = 0; a < 4; ++a) {
    v[a] = S(c[16 + a]);
    for (int b = 0; b < 4; ++b) v[a] += c[4 * a + b] * p[b];
  }
  const S vp = dot4(v, p);
  for (int a = 0; a < 4; ++a) v[a] -= vp * p[a];
  return push_forward(x, off, p, v);
}

VectorField s3_field(std::uint64_t seed) {
  const Coeffs c(seed, 2, 20);
  return VectorField([c](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const auto w = s3_component(x, 0, c);
    return Vec<S>{w[0], w[1], w[2]};
  });
}

VectorField einstein_field(std::uint64_t seed) {
  const Coeffs c(seed, 3, 20);
  const Coeffs t(seed, 4, 2 * 6 + 4);
  return VectorField([c, t](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const auto w = s3_component(x, 0, c);
    const R4<S> p = inv_stereo(x, 0);
    const S fs = 1.0 + 0.3 * t[12] * cos(x[3]) + 0.3 * t[13] * sin(x[4]);
    const S ft = 1.0 + 0.5 * t[14] * p[0] + 0.5 * t[15] * p[3];
    Vec<S> out(5);
    for (int a = 0; a < 3; ++a) out[a] = fs * w[a];
    out[3] = ft * trig_component(x, 3, 2, t, 0);
    out[4] = ft * trig_component(x, 3, 2, t, 1);
    return out;
  });
}

int at_least(int v, int lo) { return v < lo ? lo : v; }

std::function<std::vector<int>(IntegralKind, int)> uniform_counts(int dim) {
  return [dim](IntegralKind, int n) { return std::vector<int>(dim, n); };
}

// ---- Hopf structure -------------------------------------------------------

// φ and ξ in chart coordinates; ξ carries the factor e^{-eps p0}.
ContactData hopf_contact(double eps) {
  ContactData d;
  d.xi = VectorField([eps](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const R4<S> p = inv_stereo(x, 0);
    const auto w = push_forward(x, 0, p, times_i(p));
    const S s = eps != 0.0 ? exp(-eps * p[0]) : S(1.0);
    return Vec<S>{s * w[0], s * w[1], s * w[2]};
  });
  d.phi = EndoField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const R4<S> p = inv_stereo(x, 0);
    const R4<S> pj = times_j(p), pk = times_k(p);
    Mat<S> m(3);
    for (int col = 0; col < 3; ++col) {
      std::array<S, 3> e{S(0.0), S(0.0), S(0.0)};
      e[col] = S(1.0);
      const R4<S> v = pull_back(x, 0, e);
      const S vj = dot4(v, pj), vk = dot4(v, pk);
      R4<S> out;
      for (int a = 0; a < 4; ++a) out[a] = vj * pk[a] - vk * pj[a];
      const auto w = push_forward(x, 0, p, out);
      for (int r = 0; r < 3; ++r) m(r, col) = w[r];
    }
    return m;
  });
  return d;
}

ScenarioManifold hopf_like(const std::string& name, double eps) {
  ScenarioManifold s;
  s.name = name;
  s.chart = round_s3_chart(name, eps);
  s.contact = hopf_contact(eps);
  const Chart chart = s.chart;
  const VectorField xi = s.contact->xi;
  s.pair.p1 = s.contact->phi;
  s.pair.p2 = EndoField([chart, xi](const auto& x) {
    const auto v = xi(x);
    return outer(v, chart.metric(x) * v);
  });
  s.expected.self_adjoint = false;
  s.expected.allowed = false;
  s.param = s3_param();
  s.grid_counts = uniform_counts(3);
  s.random_field = s3_field;
  return s;
}

double e1_source(double u) {
  const double s = std::sin(u) * std::sin(u);
  const double c2 = std::cos(u) * std::cos(u);
  return -s * (4.0 * c2 * c2 - 5.0 * c2 + 10.0) / std::pow(1.0 + s, 3);
}

}  // namespace

Profile sine_profile(double amplitude) {
  return Profile([amplitude](const auto& u) { return amplitude * sin(u[0]); });
}

Profile zero_profile() {
  return Profile([](const auto& u) {
    using S = std::decay_t<decltype(u[0])>;
    return S(0.0);
  });
}

ScenarioManifold flat_torus_projectors(int n1, int n2) {
  if (n1 < 1 || n2 < 1 || n1 + n2 > kMaxDim) throw UsageError("flat torus needs n1, n2 >= 1");
  const int n = n1 + n2;
  ScenarioManifold s;
  s.name = "flat-torus";
  s.chart = torus_chart(s.name, n, constant_endo(Mat<double>::identity(n)));
  s.pair = {constant_endo(coordinate_projector(n, 0, n1)),
            constant_endo(coordinate_projector(n, n1, n))};
  s.expected.integrand_degenerate = true;
  s.notes = "flat T^" + std::to_string(n) + ", constant coordinate projectors " +
            std::to_string(n1) + "+" + std::to_string(n2);
  s.param = periodic_box(s.chart);
  // The formula integrand costs a full frame sum per node; above two
  // dimensions it runs on a quarter of the nominal resolution.
  s.grid_counts = [n](IntegralKind kind, int m) {
    if (kind == IntegralKind::formula && n > 2) return std::vector<int>(n, at_least(m / 4, 4));
    return std::vector<int>(n, m);
  };
  s.random_field = [n](std::uint64_t seed) { return torus_field(n, seed); };
  return s;
}

ScenarioManifold scaled_identity(const ScenarioManifold& base, double c) {
  if (c == 0.0) throw UsageError("scale factor must be nonzero");
  ScenarioManifold s = base;
  s.name = "scaled-identity";
  s.pair = {c * base.pair.p1, c * base.pair.p2};
  s.notes = base.notes + ", both endomorphisms scaled by " + std::to_string(c);
  return s;
}

ScenarioManifold warped_torus(const Profile& w) {
  ScenarioManifold s;
  s.name = "warped-torus";
  s.chart = torus_chart(s.name, 2, EndoField([w](const auto& x) {
                          using S = std::decay_t<decltype(x[0])>;
                          Vec<S> u(1);
                          u[0] = x[0];
                          Mat<S> g(2);
                          g(0, 0) = S(1.0);
                          g(1, 1) = exp(2.0 * w(u));
                          return g;
                        }));
  s.pair = {constant_endo(coordinate_projector(2, 0, 1)),
            constant_endo(coordinate_projector(2, 1, 2))};
  s.expected.integrand_degenerate = false;
  s.notes = "g = du^2 + e^{2w(u)} dv^2, projectors onto d/du and d/dv";
  s.param = periodic_box(s.chart);
  s.grid_counts = uniform_counts(2);
  s.random_field = [](std::uint64_t seed) { return torus_field(2, seed); };
  return s;
}

EinsteinBlocks einstein_blocks(double u) {
  const double s = std::sin(u) * std::sin(u);
  EinsteinBlocks b;
  b.e1 = e1_source(u);
  b.e1_true = -s * (6.0 + 3.0 * s + s * s) / std::pow(1.0 + s, 3);
  b.e2 = -3.0;
  b.a1 = std::abs(std::sin(u)) * std::sqrt(6.0 + 3.0 * s + s * s) / std::pow(1.0 + s, 1.5);
  b.a2 = std::sqrt(3.0);
  return b;
}

ScenarioManifold einstein_s3xt2() {
  ScenarioManifold s;
  s.name = "einstein-s3xt2";
  Chart& c = s.chart;
  c.name = s.name;
  c.dim = 5;
  c.domain = {{-INFINITY, INFINITY}, {-INFINITY, INFINITY}, {-INFINITY, INFINITY},
              {0.0, kTwoPi}, {0.0, kTwoPi}};
  c.periodic = {false, false, false, true, true};
  c.sample_box = {{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}, {0.0, kTwoPi}, {0.0, kTwoPi}};
  c.metric = EndoField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S lam = stereo_lambda(x, 0);
    const S su = sin(x[3]);
    Mat<S> g(5);
    for (int i = 0; i < 3; ++i) g(i, i) = lam * lam;
    g(3, 3) = 1.0 + su * su;
    g(4, 4) = g(3, 3);
    return g;
  });
  s.pair.p1 = EndoField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S su = sin(x[3]);
    const S sq = su * su;
    const S a1 = abs(su) * sqrt(6.0 + 3.0 * sq + sq * sq) / pow(1.0 + sq, 1.5);
    Mat<S> m(5);
    for (int i = 0; i < 3; ++i) m(i, i) = a1;
    return m;
  });
  Mat<double> p2(5);
  p2(3, 3) = p2(4, 4) = std::sqrt(3.0);
  s.pair.p2 = constant_endo(p2);
  s.expected.integrand_degenerate = true;
  s.notes = "S^3 x T^2 with the warped conformal T^2 factor; P = sqrt(-E) split into blocks";
  Parametrization& p = s.param;
  s3_axes(p);
  p.axes.push_back({{0.0, kTwoPi}, AxisRule::periodic});
  p.axes.push_back({{0.0, kTwoPi}, AxisRule::periodic});
  p.map = [](const Vec<double>& t, double& jac) {
    Vec<double> x(5);
    jac = s3_map(t, x, 0);
    x[3] = t[3];
    x[4] = t[4];
    return x;
  };
  s.grid_counts = [](IntegralKind kind, int n) {
    if (kind == IntegralKind::stokes)
      return std::vector<int>{at_least(3 * n / 8, 4), at_least(3 * n / 8, 4),
                              at_least(3 * n / 16, 4), at_least(3 * n / 8, 4),
                              at_least(3 * n / 16, 4)};
    return std::vector<int>{at_least(n / 16, 2), at_least(n / 16, 2), at_least(n / 16, 2),
                            at_least(n / 8, 2), at_least(n / 32, 2)};
  };
  s.random_field = einstein_field;
  return s;
}

ScenarioManifold hopf_contact_s3() {
  ScenarioManifold s = hopf_like("hopf-s3", 0.0);
  s.notes = "round S^3, stereographic chart; P1 = phi, P2 = xi (x) eta for the Hopf structure";
  return s;
}

ScenarioManifold hopf_contact_rescaled(double eps) {
  ScenarioManifold s = hopf_like("hopf-s3-rescaled", eps);
  s.expected.div_p_squared_zero = false;
  s.notes = "S^3 with metric e^{2 eps p0} g_round and the correspondingly rescaled Hopf field";
  return s;
}

ScenarioManifold warped_torus_unbalanced(double c) {
  ScenarioManifold s = warped_torus(sine_profile());
  s.name = "warped-torus-unbalanced";
  s.pair.p1 = c * s.pair.p1;
  s.expected.allowed = false;
  s.expected.div_pp_star_zero = false;
  s.expected.div_p_squared_zero = false;
  s.expected.integrand_degenerate.reset();
  s.notes = "warped torus, w = sin u, pair (c P_u, P_v)";
  return s;
}

ScenarioManifold scaled_by_function() {
  ScenarioManifold s = flat_torus_projectors(1, 1);
  s.name = "scaled-by-function";
  const EndoField f = EndoField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S v = 2.0 + sin(x[0]);
    Mat<S> m(2);
    m(0, 0) = m(1, 1) = v;
    return m;
  });
  s.pair = {compose(f, s.pair.p1), compose(f, s.pair.p2)};
  s.expected.div_pp_star_zero = false;
  s.expected.div_p_squared_zero = false;
  s.expected.integrand_degenerate.reset();
  s.notes = "flat T^2, pair (f P_1, f P_2) with f = 2 + sin u";
  return s;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"flat-torus", "scaled-identity", "warped-torus",
                                              "einstein-s3xt2", "hopf-s3"};
  return names;
}

ScenarioManifold make_scenario(const std::string& name) {
  if (name == "flat-torus") return flat_torus_projectors(2, 1);
  if (name == "scaled-identity") return scaled_identity(warped_torus(sine_profile()), 2.0);
  if (name == "warped-torus") return warped_torus(sine_profile());
  if (name == "einstein-s3xt2") return einstein_s3xt2();
  if (name == "hopf-s3") return hopf_contact_s3();
  throw UsageError("unknown scenario: " + name);
}

FlagEvidence verify_flags(const ScenarioManifold& s, std::uint64_t seed, int points) {
  const Chart& chart = s.chart;
  const int n = chart.dim;
  const EndoField p = s.pair.p1 + s.pair.p2;
  const EndoField pps = compose(p, adjoint_field(chart, p));
  const EndoField psq = compose(p, p);
  std::map<std::string, double> worst{{"orthogonal", 0.0},       {"self_adjoint", 0.0},
                                      {"allowed", 0.0},          {"div_pp_star_zero", 0.0},
                                      {"div_p_squared_zero", 0.0}};
  const bool want_integrand = s.expected.integrand_degenerate.has_value();
  if (want_integrand) worst["integrand_degenerate"] = 0.0;
  auto bump = [&](const std::string& k, double v) {
    if (v > worst[k] || v != v) worst[k] = v;
  };

  const auto pts = sample_points(chart, seed, points);
  bump("orthogonal", check_pair(s.pair, chart, pts, 0.0).max_normalized);
  for (const auto& x : pts) {
    bump("self_adjoint", self_adjoint_residual(s.pair, chart, x).normalized());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Vec<double> ea(n), eb(n);
        ea[a] = 1.0;
        eb[b] = 1.0;
        for (const Residual& r : allowed_forms(s.pair, chart, x, ea, eb).residual)
          bump("allowed", r.normalized());
      }
    bump("div_pp_star_zero", max_abs(div_endo(chart, pps, x)) / (1.0 + frobenius(pps(x))));
    bump("div_p_squared_zero", max_abs(div_endo(chart, psq, x)) / (1.0 + frobenius(psq(x))));
    if (want_integrand) {
      const DistInvariants inv = dist_invariants(s.pair, chart, x);
      bump("integrand_degenerate", std::abs(inv.walczak_rhs()) / (1.0 + inv.abs_terms()));
    }
  }

  std::map<std::string, bool> expected{{"orthogonal", s.expected.orthogonal},
                                       {"self_adjoint", s.expected.self_adjoint},
                                       {"allowed", s.expected.allowed},
                                       {"div_pp_star_zero", s.expected.div_pp_star_zero},
                                       {"div_p_squared_zero", s.expected.div_p_squared_zero}};
  if (want_integrand) expected["integrand_degenerate"] = *s.expected.integrand_degenerate;

  FlagEvidence ev;
  ev.residual = worst;
  for (const auto& [k, r] : worst) {
    const bool is_true = r <= 1e-8;
    const bool is_false = r >= 1e-5;
    ev.observed[k] = is_true;
    if ((expected[k] && !is_true) || (!expected[k] && !is_false)) ev.mismatches.push_back(k);
  }
  return ev;
}

ScenarioManifold load_scenario(const std::string& name) {
  ScenarioManifold s = make_scenario(name);
  const FlagEvidence ev = verify_flags(s);
  if (!ev.mismatches.empty()) {
    std::string msg = "scenario " + name + " failed flag verification:";
    for (const auto& k : ev.mismatches)
      msg += " " + k + " (residual " + std::to_string(ev.residual.at(k)) + ")";
    throw ScenarioError(msg);
  }
  return s;
}

}  // namespace distgeom
