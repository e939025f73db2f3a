#include "distgeom/dist_tensors.hpp"

#include <cmath>

namespace distgeom {

namespace {

Residual vec_residual(const Vec<double>& a, const Vec<double>& b) {
  return Residual{max_abs(a - b), max_abs(a) + max_abs(b)};
}

Residual scalar_residual(double a, double b) {
  return Residual{std::abs(a - b), std::abs(a) + std::abs(b)};
}

}  // namespace

VectorField DistFields::B1(const VectorField& Y, const VectorField& X) const {
  return apply(p1s, nab(apply(p1, X), apply(p2, Y)));
}
VectorField DistFields::B2(const VectorField& X, const VectorField& Y) const {
  return apply(p2s, nab(apply(p2, Y), apply(p1, X)));
}
VectorField DistFields::hB1(const VectorField& Y, const VectorField& X) const {
  return apply(p1, nab(apply(p1s, X), apply(p2s, Y)));
}
VectorField DistFields::hB2(const VectorField& X, const VectorField& Y) const {
  return apply(p2, nab(apply(p2s, Y), apply(p1s, X)));
}
VectorField DistFields::cB1(const VectorField& Y, const VectorField& X) const {
  return apply(p1, nab(apply(p1, X), apply(p2s, Y)));
}
VectorField DistFields::cB2(const VectorField& X, const VectorField& Y) const {
  return apply(p2, nab(apply(p2, Y), apply(p1s, X)));
}

std::array<VectorField, 5> DistFields::rp_terms(const VectorField& Y, const VectorField& X1,
                                                const VectorField& X2) const {
  const VectorField p2y = apply(p2, Y);
  const VectorField p1x1 = apply(p1, X1);
  const VectorField ps_br = apply(p_sum_adjoint(), bracket(p2y, p1x1));
  return {
      apply(p2s, nab(p2y, apply(p2, nab(p1x1, apply(p1s, X2))))),
      apply(p2, nab(p2y, apply(p1s, nab(p1x1, apply(p1, X2))))),
      -1.0 * apply(p2s, nab(p1x1, apply(p1, nab(p2y, apply(p1s, X2))))),
      -1.0 * apply(p2, nab(p1x1, apply(p2s, nab(p2y, apply(p1, X2))))),
      -1.0 * apply(p2, nab(ps_br, apply(p1s, X2))),
  };
}

std::array<ScalarField, 5> DistFields::tsr(const VectorField& Y, const VectorField& X1,
                                           const VectorField& X2, const VectorField& Z) const {
  const VectorField p1x1 = apply(p1, X1);
  const VectorField p2y = apply(p2, Y);
  const VectorField t1 = apply(p2, nab(p1x1, B2(X2, Y))) - cB2(nab(p1x1, apply(p1, X2)), Y) -
                         hB2(X2, nab(p1x1, p2y));
  const VectorField t2 = apply(p1, nab(p2y, B1(Z, X1))) - cB1(nab(p2y, apply(p2, Z)), X1) -
                         hB1(Z, nab(p2y, p1x1));
  const VectorField s1 = hB2(X2, nab(p2y, p1x1));
  const VectorField s2 = hB1(Z, nab(p1x1, p2y));
  const auto r = rp_terms(Y, X1, X2);
  const VectorField rp = r[0] + r[1] + r[2] + r[3] + r[4];
  return {inner(chart, t1, Z), inner(chart, t2, X2), inner(chart, s1, Z), inner(chart, s2, X2),
          inner(chart, rp, Z)};
}

std::vector<VectorField> DistFields::frame(const Mat<double>& q) const {
  std::vector<VectorField> e;
  for (int s = 0; s < chart.dim; ++s) e.push_back(frame_field(chart, s, q));
  return e;
}

VectorField DistFields::H1(const Mat<double>& q) const {
  const auto e = frame(q);
  VectorField sum = d1(e[0], e[0]);
  for (int s = 1; s < chart.dim; ++s) sum = sum + d1(e[s], e[s]);
  return apply(p2, sum);
}

VectorField DistFields::H2(const Mat<double>& q) const {
  const auto e = frame(q);
  VectorField sum = d2(e[0], e[0]);
  for (int s = 1; s < chart.dim; ++s) sum = sum + d2(e[s], e[s]);
  return apply(p1, sum);
}

BTensors b_tensors(const EndoPair& pair, const Chart& chart, const Vec<double>& x0,
                   const VectorField& X, const VectorField& Y) {
  const Vec<double> x = chart.locate(x0);
  const DistFields f(chart, pair);
  return BTensors{f.B1(Y, X)(x),  f.B2(X, Y)(x),  f.hB1(Y, X)(x),
                  f.hB2(X, Y)(x), f.cB1(Y, X)(x), f.cB2(X, Y)(x)};
}

BTensors b_tensors(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                   const Vec<double>& X, const Vec<double>& Y) {
  return b_tensors(pair, chart, x, constant_field(X), constant_field(Y));
}

Lemma1Residuals lemma1_residual(const EndoPair& pair, const Chart& chart, const Vec<double>& x0,
                                const VectorField& X, const VectorField& Y) {
  const Vec<double> x = chart.locate(x0);
  const DistFields f(chart, pair);
  const Vec<double> p2b2 = apply(f.p2, f.B2(X, Y))(x);
  const Vec<double> p1b1 = apply(f.p1, f.B1(Y, X))(x);
  const std::array<Vec<double>, 4> other{
      f.hB2(X, apply(f.p2, Y))(x),
      f.cB2(apply(f.p1, X), Y)(x),
      f.hB1(Y, apply(f.p1, X))(x),
      f.cB1(apply(f.p2, Y), X)(x),
  };
  Lemma1Residuals out;
  for (int i = 0; i < 4; ++i) {
    const Vec<double>& lhs = i < 2 ? p2b2 : p1b1;
    out.diff[i] = lhs - other[i];
    out.residual[i] = vec_residual(lhs, other[i]);
  }
  return out;
}

double TsrValues::abs_terms() const {
  return std::abs(t1) + std::abs(t2) + std::abs(s1) + std::abs(s2) + std::abs(rp);
}

TsrValues tsr_tensors(const EndoPair& pair, const Chart& chart, const Vec<double>& x0,
                      const VectorField& Y, const VectorField& X1, const VectorField& X2,
                      const VectorField& Z) {
  const Vec<double> x = chart.locate(x0);
  const DistFields f(chart, pair);
  const auto v = f.tsr(Y, X1, X2, Z);
  return TsrValues{v[0](x), v[1](x), v[2](x), v[3](x), v[4](x)};
}

Residual codazzi_residual(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                          const VectorField& Y, const VectorField& X1, const VectorField& X2,
                          const VectorField& Z) {
  const TsrValues v = tsr_tensors(pair, chart, x, Y, X1, X2, Z);
  return Residual{std::abs(v.sum()), v.abs_terms()};
}

double DistInvariants::abs_terms() const {
  return std::abs(smix) + std::abs(h1_sq) + std::abs(h2_sq) + std::abs(t1_sq) +
         std::abs(t2_sq) + std::abs(H1_sq) + std::abs(H2_sq);
}

DistInvariants dist_invariants(const EndoPair& pair, const Chart& chart, const Vec<double>& x0,
                               const Mat<double>& q) {
  const Vec<double> x = chart.locate(x0);
  const DistFields f(chart, pair);
  const int n = chart.dim;
  const auto e = f.frame(q);
  const Mat<double> g = chart.metric(x);
  const Mat<double> P1 = f.p1(x), P2 = f.p2(x);

  std::vector<Vec<double>> D1(n * n), D2(n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      D1[s * n + t] = f.d1(e[s], e[t])(x);
      D2[s * n + t] = f.d2(e[s], e[t])(x);
    }

  DistInvariants inv;
  inv.n = n;
  inv.h1.resize(n * n);
  inv.h2.resize(n * n);
  inv.t1.resize(n * n);
  inv.t2.resize(n * n);
  // ‖P_i v'‖²_P = <P_i v', v'> on the unprojected preimage v'.
  const auto pnorm = [&g](const Mat<double>& p, const Vec<double>& v) {
    return inner(g, p * v, v);
  };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const Vec<double> hs1 = 0.5 * (D1[s * n + t] + D1[t * n + s]);
      const Vec<double> ts1 = 0.5 * (D1[s * n + t] - D1[t * n + s]);
      const Vec<double> hs2 = 0.5 * (D2[s * n + t] + D2[t * n + s]);
      const Vec<double> ts2 = 0.5 * (D2[s * n + t] - D2[t * n + s]);
      inv.h1[s * n + t] = P2 * hs1;
      inv.t1[s * n + t] = P2 * ts1;
      inv.h2[s * n + t] = P1 * hs2;
      inv.t2[s * n + t] = P1 * ts2;
      inv.h1_sq += pnorm(P2, hs1);
      inv.t1_sq += pnorm(P2, ts1);
      inv.h2_sq += pnorm(P1, hs2);
      inv.t2_sq += pnorm(P1, ts2);
    }
  Vec<double> m1(n), m2(n);
  for (int s = 0; s < n; ++s) {
    m1 += D1[s * n + s];
    m2 += D2[s * n + s];
  }
  inv.H1 = P2 * m1;
  inv.H2 = P1 * m2;
  inv.H1_sq = pnorm(P2, m1);
  inv.H2_sq = pnorm(P1, m2);

  double smix = 0.0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto r = f.rp_terms(e[t], e[s], e[s]);
      const Vec<double> v = r[0](x) + r[1](x) + r[2](x) + r[3](x) + r[4](x);
      smix += inner(g, v, e[t](x));
    }
  inv.smix = smix;
  return inv;
}

DistInvariants dist_invariants(const EndoPair& pair, const Chart& chart, const Vec<double>& x) {
  return dist_invariants(pair, chart, x, Mat<double>::identity(chart.dim));
}

namespace {

/// (PP*)^i_j ∂_i X^j + ½ (PP*)^{ij} ∂_k g_ij X^k from given partials dX[i] = ∂_i X.
double div_p_coordinate(const Mat<double>& pps, const Connection<double>& k,
                        const std::array<Vec<double>, kMaxDim>& dX, const Vec<double>& X) {
  const int n = X.n;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += pps(i, j) * dX[i][j];
  const Mat<double> up = pps * k.ginv;
  for (int kk = 0; kk < n; ++kk) {
    double t = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t += up(i, j) * k.dg[kk](i, j);
    s += 0.5 * t * X[kk];
  }
  return s;
}

}  // namespace

DivPForms div_p_forms(const EndoField& P, const Chart& chart, const VectorField& X,
                      const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  const Connection<double> k = connection_at(chart, x);
  const Mat<double> p = P(x);
  const Mat<double> ps = adjoint_at(k.g, k.ginv, p);
  DivPForms out;
  out.trace = trace(ps * cov_deriv_vector(chart, X, x) * p);
  std::array<Vec<double>, kMaxDim> dX;
  for (int i = 0; i < n; ++i) {
    Vec<double> e(n);
    e[i] = 1.0;
    dX[i] = eps_part(X(seed(x, e)));
  }
  out.coordinate = div_p_coordinate(p * ps, k, dX, X(x));
  return out;
}

double div_p(const EndoField& P, const Chart& chart, const VectorField& X, const Vec<double>& x) {
  return div_p_forms(P, chart, X, x).trace;
}

double div_p_fd(const EndoField& P, const Chart& chart, const PointField& X,
                const Vec<double>& x0, double h) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  const Connection<double> k = connection_at(chart, x);
  const Mat<double> p = P(x);
  const Mat<double> ps = adjoint_at(k.g, k.ginv, p);
  const auto central = [&](int i, double step) {
    Vec<double> xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    return (1.0 / (2.0 * step)) * (X(xp) - X(xm));
  };
  std::array<Vec<double>, kMaxDim> dX;
  for (int i = 0; i < n; ++i) {
    const Vec<double> coarse = central(i, h);
    const Vec<double> fine = central(i, 0.5 * h);
    dX[i] = (1.0 / 3.0) * (4.0 * fine - coarse);
  }
  return div_p_coordinate(p * ps, k, dX, X(x));
}

Prop3Residuals prop3_residuals(const EndoField& P, const Chart& chart, const VectorField& X,
                               const ScalarField& f, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const EndoField pps = compose(P, adjoint_field(chart, P));
  const VectorField ppsX = apply(pps, X);
  const Mat<double> g = chart.metric(x);
  const Mat<double> gi = metric_factors(g).inv;

  const double dp = div_p(P, chart, X, x);
  const double dpx = div_vector(chart, ppsX, x);
  const double in = endo_inner(g, gi, pps(x), cov_deriv_vector(chart, X, x));
  const double lhs = div_p(P, chart, f * X, x);
  const double fx = f(x);
  const double dfx = derivative(ppsX, f)(x);

  Prop3Residuals out;
  out.vs_div = scalar_residual(dp, dpx);
  out.vs_inner = scalar_residual(dp, in);
  out.leibniz = Residual{std::abs(lhs - fx * dpx - dfx),
                         std::abs(lhs) + std::abs(fx * dpx) + std::abs(dfx)};
  out.div_pps = div_endo(chart, pps, x);
  out.div_pps_x = dot(out.div_pps, X(x));
  return out;
}

WalczakResult walczak_pointwise_residual(const EndoPair& pair, const Chart& chart,
                                         const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const DistFields f(chart, pair);
  const Mat<double> id = Mat<double>::identity(chart.dim);
  const VectorField H = f.H1(id) + f.H2(id);
  WalczakResult out;
  out.lhs = div_p_fd(f.p_sum(), chart, [&H](const Vec<double>& y) { return H(y); }, x);
  out.inv = dist_invariants(pair, chart, x);
  out.rhs = out.inv.walczak_rhs();
  out.residual = Residual{std::abs(out.lhs - out.rhs), std::abs(out.lhs) + out.inv.abs_terms()};
  return out;
}

TraceLemmas trace_lemma_residuals(const EndoPair& pair, const Chart& chart,
                                  const Vec<double>& x0, const Mat<double>& q) {
  const Vec<double> x = chart.locate(x0);
  const DistFields f(chart, pair);
  const int n = chart.dim;
  const auto e = f.frame(q);
  const Chart& c = f.chart;
  const auto P1 = [&](int s) { return apply(f.p1, e[s]); };
  const auto P2 = [&](int s) { return apply(f.p2, e[s]); };

  TraceLemmas out;
  std::array<double, 5> terms{};
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto v = f.tsr(e[t], e[s], e[s], e[t]);
      const double T1 = v[0](x), T2 = v[1](x), S1 = v[2](x), S2 = v[3](x);
      out.lhs[0] += T1;
      out.lhs[1] += T2;
      out.lhs[2] += S2;
      out.lhs[3] += S1;

      const VectorField n11 = f.nab(P1(s), P1(s));
      const VectorField n22t = f.nab(P2(t), P2(t));
      const VectorField p1n22t = apply(f.p1, n22t);

      const double a1 = inner(c, n11, p1n22t)(x);
      const double b1 = derivative(P1(s), inner(c, p1n22t, P1(s)))(x);
      out.rhs[0] += a1 - b1;

      const double a2 = derivative(P2(t), inner(c, f.nab(P1(s), P2(t)), P1(s)))(x);
      const double b2 = inner(c, n22t, apply(f.p2, n11))(x);
      out.rhs[1] += a2 + b2;

      const double a3 = inner(c, apply(f.p2, f.nab(P1(s), P1(t))), f.nab(P1(t), P1(s)))(x);
      out.rhs[2] += a3;

      const double a4 = inner(c, apply(f.p1, f.nab(P2(s), P2(t))), f.nab(P2(t), P2(s)))(x);
      out.rhs[3] += a4;

      const double a5 = a4;
      const double b5 =
          inner(c, f.nab(apply(f.p2, f.nab(P2(t), P1(s))), P2(t)), P1(s))(x);
      out.lhs[4] += a5 + b5;

      terms[0] += std::abs(T1) + std::abs(a1) + std::abs(b1);
      terms[1] += std::abs(T2) + std::abs(a2) + std::abs(b2);
      terms[2] += std::abs(S2) + std::abs(a3);
      terms[3] += std::abs(S1) + std::abs(a4);
      terms[4] += std::abs(a5) + std::abs(b5);
    }
  for (int i = 0; i < 5; ++i)
    out.residual[i] = Residual{std::abs(out.lhs[i] - out.rhs[i]), terms[i]};
  return out;
}

TraceLemmas trace_lemma_residuals(const EndoPair& pair, const Chart& chart,
                                  const Vec<double>& x) {
  return trace_lemma_residuals(pair, chart, x, Mat<double>::identity(chart.dim));
}

ContactResidual contact_identity_residual(const EndoField& phi, const VectorField& xi,
                                          const Chart& chart, const Vec<double>& X,
                                          const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  const Mat<double> g = chart.metric(x);
  const Mat<double> gi = metric_factors(g).inv;
  const Mat<double> id = Mat<double>::identity(n);
  const Vec<double> xi0 = xi(x);
  const Vec<double> eta = g * xi0;
  const Mat<double> ph = phi(x);
  const Mat<double> exi = outer(xi0, eta);

  ContactResidual out;
  out.structure = std::max(max_abs(ph * ph - (exi - id)), std::abs(dot(eta, xi0) - 1.0));
  if (out.structure > 1e-9)
    throw StructuralError("almost contact structure equations fail at the point");
  out.adjoint_identity = max_abs(ph * adjoint_at(g, gi, ph) - (id - exi));

  const EndoField pps = compose(phi, adjoint_field(chart, phi));
  out.lhs = dot(div_endo(chart, pps, x), X);
  const Vec<double> nxx = nabla(chart, xi, xi)(x);
  out.div_xi = div_vector(chart, xi, x);
  out.closed_plus = -inner(g, nxx + out.div_xi * xi0, X);
  out.closed_minus = -inner(g, nxx - out.div_xi * xi0, X);
  out.plus = scalar_residual(out.lhs, out.closed_plus);
  out.minus = scalar_residual(out.lhs, out.closed_minus);
  return out;
}

}  // namespace distgeom
