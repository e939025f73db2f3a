#include "distgeom/chart_geometry.hpp"

#include <cmath>
#include <string>

namespace distgeom {

Vec<double> Chart::locate(const Vec<double>& x) const {
  if (x.n != dim) throw DomainError("point has wrong dimension for chart " + name);
  Vec<double> y = x;
  for (int k = 0; k < dim; ++k) {
    const Interval& iv = domain[k];
    if (!std::isfinite(y[k])) throw DomainError("non-finite coordinate");
    if (periodic[k]) {
      const double period = iv.hi - iv.lo;
      y[k] = iv.lo + std::fmod(std::fmod(y[k] - iv.lo, period) + period, period);
    } else if (y[k] <= iv.lo || y[k] >= iv.hi) {
      throw DomainError("coordinate " + std::to_string(k) + " outside chart " + name);
    }
  }
  if (singular_distance && singular_distance(y) <= 0.0)
    throw DomainError("point lies on the excluded locus of chart " + name);
  return y;
}

double Riemann::eval(const Vec<double>& a, const Vec<double>& b, const Vec<double>& c,
                     const Vec<double>& d) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double ab = a[i] * b[j];
      if (ab == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += ab * c[k] * d[l] * (*this)(i, j, k, l);
    }
  return s;
}

MetricJet metric_jet(const Chart& chart, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  MetricJet j;
  j.n = n;
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      Vec<D2> xe(x);
      xe[k].eps = D1(1.0);
      xe[l].val.eps = 1.0;
      const Mat<D2> G = chart.metric(xe);
      Mat<double> g(n), dk(n), dl(n), dkl(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          g(a, b) = G(a, b).val.val;
          dl(a, b) = G(a, b).val.eps;
          dk(a, b) = G(a, b).eps.val;
          dkl(a, b) = G(a, b).eps.eps;
        }
      if (k == 0 && l == 0) j.g = g;
      if (k == l) j.dg[k] = dk;
      if (k == 0) j.dg[l] = dl;
      j.d2g[k][l] = dkl;
      j.d2g[l][k] = dkl;
    }
  const SpdFactors<double> f = metric_factors(j.g);
  j.g_inv = f.inv;
  j.sqrt_det = f.sqrt_det;
  return j;
}

ConnectionCoeffs christoffel(const MetricJet& jet) {
  const int n = jet.n;
  ConnectionCoeffs c;
  c.n = n;
  for (int m = 0; m < n; ++m) {
    Mat<double> gm(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += jet.g_inv(m, l) * (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
        gm(i, j) = 0.5 * s;
      }
    c.gamma[m] = gm;
  }
  return c;
}

Riemann riemann(const Chart& chart, const Vec<double>& x) {
  const MetricJet jet = metric_jet(chart, x);
  const ConnectionCoeffs cc = christoffel(jet);
  const int n = jet.n;
  const auto& G = cc.gamma;

  // dgam[l][m](i, j) = ∂_l Γ^m_ij.
  std::array<std::array<Mat<double>, kMaxDim>, kMaxDim> dgam;
  for (int l = 0; l < n; ++l) {
    const Mat<double> dginv = -(jet.g_inv * jet.dg[l] * jet.g_inv);
    for (int m = 0; m < n; ++m) {
      Mat<double> t(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) {
            const double first = jet.dg[i](j, p) + jet.dg[j](i, p) - jet.dg[p](i, j);
            const double second =
                jet.d2g[l][i](j, p) + jet.d2g[l][j](i, p) - jet.d2g[l][p](i, j);
            s += dginv(m, p) * first + jet.g_inv(m, p) * second;
          }
          t(i, j) = 0.5 * s;
        }
      dgam[l][m] = t;
    }
  }

  Riemann R;
  R.n = n;
  R.r.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // Components of R(e_i, e_j) e_k.
        Vec<double> up(n);
        for (int m = 0; m < n; ++m) {
          double s = dgam[i][m](j, k) - dgam[j][m](i, k);
          for (int p = 0; p < n; ++p) s += G[m](i, p) * G[p](j, k) - G[m](j, p) * G[p](i, k);
          up[m] = s;
        }
        const Vec<double> low = jet.g * up;
        for (int l = 0; l < n; ++l) R(i, j, k, l) = low[l];
      }
  return R;
}

Mat<double> ricci(const Chart& chart, const Vec<double>& x) {
  const MetricJet jet = metric_jet(chart, x);
  const Riemann R = riemann(chart, x);
  const int n = jet.n;
  // Ric_jk = R^i_ijk = g^{il} R_ijkl.
  Mat<double> ric(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) s += jet.g_inv(i, l) * R(i, j, k, l);
      ric(j, k) = s;
    }
  return ric;
}

Mat<double> einstein_tensor(const Chart& chart, const Vec<double>& x) {
  if (chart.dim < 3) throw UsageError("einstein_tensor requires dim >= 3");
  const MetricJet jet = metric_jet(chart, x);
  const Mat<double> ric = ricci(chart, x);
  const Mat<double> mixed = jet.g_inv * ric;
  const double scal = trace(mixed);
  return mixed - (0.5 * scal) * Mat<double>::identity(jet.n);
}

Mat<double> cov_deriv_vector(const Chart& chart, const VectorField& X, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  const Connection<double> k = connection_at(chart, x);
  Mat<double> m(n);
  for (int i = 0; i < n; ++i) {
    Vec<double> e(n);
    e[i] = 1.0;
    const Vec<D1> xe = seed(x, e);
    const Vec<D1> v = X(xe);
    const Vec<double> col = eps_part(v) + gamma_apply(k, e, value_part(v));
    for (int r = 0; r < n; ++r) m(r, i) = col[r];
  }
  return m;
}

DivForms div_vector_forms(const Chart& chart, const VectorField& X, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  DivForms d;
  d.trace = trace(cov_deriv_vector(chart, X, x));
  double s = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec<double> e(n);
    e[i] = 1.0;
    const Vec<D1> xe = seed(x, e);
    const D1 rho = metric_factors(chart.metric(xe)).sqrt_det;
    const Vec<D1> v = X(xe);
    s += (rho * v[i]).eps;
    sq = rho.val;
  }
  d.density = s / sq;
  return d;
}

double div_vector(const Chart& chart, const VectorField& X, const Vec<double>& x) {
  return div_vector_forms(chart, X, x).trace;
}

DivEndoForms div_endo_forms(const Chart& chart, const EndoField& S, const Vec<double>& x0) {
  const Vec<double> x = chart.locate(x0);
  const int n = chart.dim;
  const Connection<double> k = connection_at(chart, x);
  const Mat<double> s0 = S(x);

  // dS[i] = ∂_i S and dRho[i] = ∂_i(√g S).
  std::array<Mat<double>, kMaxDim> dS;
  std::array<Mat<double>, kMaxDim> dRho;
  for (int i = 0; i < n; ++i) {
    Vec<double> e(n);
    e[i] = 1.0;
    const Vec<D1> xe = seed(x, e);
    const Mat<D1> se = S(xe);
    const D1 rho = metric_factors(chart.metric(xe)).sqrt_det;
    dS[i] = eps_part(se);
    dRho[i] = eps_part(rho * se);
  }

  DivEndoForms out{Vec<double>(n), Vec<double>(n)};
  // ∂_i S^i_j + Γ^i_il S^l_j - Γ^l_ij S^i_l
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += dS[i](i, j);
      for (int l = 0; l < n; ++l) {
        s += k.gamma[i](i, l) * s0(l, j);
        s -= k.gamma[l](i, j) * s0(i, l);
      }
    }
    out.trace[j] = s;
  }
  // (1/√g) ∂_i(√g S^i_j) - ½ S^{im} ∂_j g_im - ½ S^{im}(∂_i g_jm - ∂_m g_ij)
  const Mat<double> sup = s0 * k.ginv;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += dRho[i](i, j);
    s /= k.sqrt_det;
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m)
        s -= 0.5 * sup(i, m) * (k.dg[j](i, m) + k.dg[i](j, m) - k.dg[m](i, j));
    out.density[j] = s;
  }
  return out;
}

Vec<double> div_endo(const Chart& chart, const EndoField& S, const Vec<double>& x) {
  return div_endo_forms(chart, S, x).trace;
}

double endo_inner(const Mat<double>& g, const Mat<double>& ginv, const Mat<double>& a,
                  const Mat<double>& b) {
  // Σ A^i_j g_ik B^k_l g^{lj} = tr(A^T g B g^{-1})
  return trace(transpose(a) * g * b * ginv);
}

}  // namespace distgeom
