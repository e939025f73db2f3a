#include "distgeom/endo_fields.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace distgeom {

namespace {

Eigen::MatrixXd to_eigen(const Mat<double>& m) {
  Eigen::MatrixXd e(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) e(i, j) = m(i, j);
  return e;
}

Mat<double> from_eigen(const Eigen::MatrixXd& e) {
  Mat<double> m(static_cast<int>(e.rows()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m(i, j) = e(i, j);
  return m;
}

Residual vec_residual(const Vec<double>& a, const Vec<double>& b) {
  return Residual{max_abs(a - b), max_abs(a) + max_abs(b)};
}

}  // namespace

Mat<double> adjoint(const EndoField& P, const Chart& chart, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const Mat<double> g = chart.metric(x);
  return adjoint_at(g, metric_factors(g).inv, P(x));
}

ResidualReport check_pair(const EndoPair& pair, const Chart& chart,
                          const std::vector<Vec<double>>& points, double tol) {
  if (points.empty()) throw UsageError("check_pair needs at least one sample point");
  ResidualMax acc;
  for (const Vec<double>& x0 : points) {
    const Vec<double> x = chart.locate(x0);
    const Mat<double> g = chart.metric(x);
    const Mat<double> gi = metric_factors(g).inv;
    const Mat<double> p1 = pair.p1(x), p2 = pair.p2(x);
    const Mat<double> p1s = adjoint_at(g, gi, p1), p2s = adjoint_at(g, gi, p2);
    const double r = std::max({frobenius(p1 * p2s), frobenius(p1s * p2), frobenius(p2 * p1s),
                               frobenius(p2s * p1)});
    acc.add(Residual{r, frobenius(p1) * frobenius(p2)});
  }
  ResidualReport rep;
  rep.check = "pair";
  rep.samples = static_cast<std::int64_t>(points.size());
  rep.max_abs = acc.max_abs;
  rep.max_normalized = acc.max_normalized;
  rep.tolerance = tol;
  rep.pass = acc.max_normalized <= tol;
  return rep;
}

Residual self_adjoint_residual(const EndoPair& pair, const Chart& chart, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const Mat<double> g = chart.metric(x);
  const Mat<double> gi = metric_factors(g).inv;
  const Mat<double> p1 = pair.p1(x), p2 = pair.p2(x);
  const double r =
      std::max(frobenius(adjoint_at(g, gi, p1) - p1), frobenius(adjoint_at(g, gi, p2) - p2));
  return Residual{r, frobenius(p1) + frobenius(p2)};
}

AllowedForms allowed_forms(const EndoPair& pair, const Chart& chart, const Vec<double>& x0,
                           const VectorField& X, const VectorField& Y) {
  const Vec<double> x = chart.locate(x0);
  const PairFields f(chart, pair);
  const EndoField &p1 = f.p1, &p2 = f.p2, &p1s = f.p1s, &p2s = f.p2s;

  std::array<Vec<double>, 4> lhs, rhs;
  {
    const VectorField d = apply(p1, X);
    const VectorField w = apply(p1s, Y);
    lhs[0] = apply(compose(p2s, p2), f.nab(d, w))(x);
    rhs[0] = apply(p2s, f.nab(d, apply(p1, w)))(x);
    lhs[1] = lhs[0];
    rhs[1] = apply(p2, f.nab(apply(p1s, d), w))(x);
  }
  {
    const VectorField d = apply(p2, X);
    const VectorField w = apply(p2s, Y);
    lhs[2] = apply(compose(p1s, p1), f.nab(d, w))(x);
    rhs[2] = apply(p1s, f.nab(d, apply(p2, w)))(x);
    lhs[3] = lhs[2];
    rhs[3] = apply(p1, f.nab(apply(p2s, d), w))(x);
  }
  AllowedForms out;
  for (int i = 0; i < 4; ++i) {
    out.b[i] = lhs[i] - rhs[i];
    out.residual[i] = vec_residual(lhs[i], rhs[i]);
  }
  return out;
}

AllowedForms allowed_forms(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                           const Vec<double>& X, const Vec<double>& Y) {
  return allowed_forms(pair, chart, x, constant_field(X), constant_field(Y));
}

Mat<double> sqrt_psd(const Mat<double>& S, const Mat<double>& g) {
  const int n = S.n;
  Mat<double> l;
  if (!cholesky(g, l)) throw MetricError("metric is not positive definite");
  const Eigen::MatrixXd L = to_eigen(l);
  const Eigen::MatrixXd Lt = L.transpose();
  const Eigen::MatrixXd LinvT = L.triangularView<Eigen::Lower>()
                                    .solve(Eigen::MatrixXd::Identity(n, n))
                                    .transpose();
  Eigen::MatrixXd M = Lt * to_eigen(S) * LinvT;
  M = 0.5 * (M + M.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (ev(i) < -1e-8) throw NotPsdError("operator has a negative eigenvalue");
    ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  }
  const Eigen::MatrixXd root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return from_eigen(LinvT * root * Lt);
}

}  // namespace distgeom
