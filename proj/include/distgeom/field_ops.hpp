#pragma once

// Connection coefficients at a point and the field combinators built on them.
// Every combinator returns a new field, so covariant derivatives of composite
// fields (P*(x)Y(x), B(X,Y)(x), frame fields, ...) differentiate the whole
// expression, product rule included.

#include <array>

#include "distgeom/chart.hpp"

namespace distgeom {

template <class S>
struct Connection {
  Mat<S> g;
  Mat<S> ginv;
  S sqrt_det;
  /// gamma[k](i, j) = Γ^k_ij.
  std::array<Mat<S>, kMaxDim> gamma;
  /// dg[k](i, j) = ∂_k g_ij.
  std::array<Mat<S>, kMaxDim> dg;
};

template <class S>
SpdFactors<S> metric_factors(const Mat<S>& g) {
  Mat<S> l;
  if (!cholesky(g, l)) throw MetricError("metric is not positive definite");
  Mat<S> li = lower_inverse(l);
  SpdFactors<S> f{transpose(li) * li, S(1.0)};
  for (int i = 0; i < g.n; ++i) f.sqrt_det = f.sqrt_det * l(i, i);
  return f;
}

template <class S>
Connection<S> connection_at(const Chart& c, const Vec<S>& x) {
  static_assert(dual_depth<S>::value < kMaxNesting, "connection needs one more layer");
  const int n = c.dim;
  Connection<S> k;
  for (int l = 0; l < n; ++l) {
    Vec<Dual<S>> xe(x);
    xe[l].eps = S(1.0);
    const Mat<Dual<S>> G = c.metric(xe);
    if (l == 0) k.g = value_part(G);
    k.dg[l] = eps_part(G);
  }
  const SpdFactors<S> f = metric_factors(k.g);
  k.ginv = f.inv;
  k.sqrt_det = f.sqrt_det;
  for (int m = 0; m < n; ++m) {
    Mat<S> gm(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        S s(0.0);
        for (int l = 0; l < n; ++l)
          s += k.ginv(m, l) * (k.dg[i](j, l) + k.dg[j](i, l) - k.dg[l](i, j));
        gm(i, j) = 0.5 * s;
        gm(j, i) = gm(i, j);
      }
    k.gamma[m] = gm;
  }
  return k;
}

/// Γ(u, v)^k = Γ^k_ij u^i v^j.
template <class S>
Vec<S> gamma_apply(const Connection<S>& k, const Vec<S>& u, const Vec<S>& v) {
  const int n = u.n;
  Vec<S> r(n);
  for (int m = 0; m < n; ++m) r[m] = inner(k.gamma[m], u, v);
  return r;
}

template <class S>
Vec<Dual<S>> seed(const Vec<S>& x, const Vec<S>& dir) {
  Vec<Dual<S>> xe(x.n);
  for (int i = 0; i < x.n; ++i) xe[i] = Dual<S>(x[i], dir[i]);
  return xe;
}

template <class S>
inline constexpr bool can_differentiate = dual_depth<S>::value < kMaxNesting;

/// Covariant derivative ∇_dir V as a field.
inline VectorField nabla(const Chart& c, const VectorField& dir, const VectorField& v) {
  return VectorField([c, dir, v](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    if constexpr (!can_differentiate<S>) {
      throw NestingError();
      return Vec<S>(x.n);
    } else {
      const Vec<S> d = dir(x);
      const Vec<Dual<S>> ve = v(seed(x, d));
      const Connection<S> k = connection_at(c, x);
      return eps_part(ve) + gamma_apply(k, d, value_part(ve));
    }
  });
}

/// Directional derivative dir(f) of a scalar field.
inline ScalarField derivative(const VectorField& dir, const ScalarField& f) {
  return ScalarField([dir, f](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    if constexpr (!can_differentiate<S>) {
      throw NestingError();
      return S(0.0);
    } else {
      return f(seed(x, dir(x))).eps;
    }
  });
}

/// Lie bracket [a, b] = db[a] - da[b].
inline VectorField bracket(const VectorField& a, const VectorField& b) {
  return VectorField([a, b](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    if constexpr (!can_differentiate<S>) {
      throw NestingError();
      return Vec<S>(x.n);
    } else {
      return eps_part(b(seed(x, a(x)))) - eps_part(a(seed(x, b(x))));
    }
  });
}

inline VectorField apply(const EndoField& e, const VectorField& v) {
  return VectorField([e, v](const auto& x) { return e(x) * v(x); });
}

inline EndoField compose(const EndoField& a, const EndoField& b) {
  return EndoField([a, b](const auto& x) { return a(x) * b(x); });
}

/// Metric adjoint E* = g^{-1} E^T g.
template <class S>
Mat<S> adjoint_at(const Mat<S>& g, const Mat<S>& ginv, const Mat<S>& e) {
  return ginv * transpose(e) * g;
}

inline EndoField adjoint_field(const Chart& c, const EndoField& e) {
  return EndoField([c, e](const auto& x) {
    const auto g = c.metric(x);
    return adjoint_at(g, metric_factors(g).inv, e(x));
  });
}

inline ScalarField inner(const Chart& c, const VectorField& a, const VectorField& b) {
  return ScalarField([c, a, b](const auto& x) { return inner(c.metric(x), a(x), b(x)); });
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField([a, b](const auto& x) { return a(x) + b(x); });
}
inline VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField([a, b](const auto& x) { return a(x) - b(x); });
}
inline VectorField operator*(double s, const VectorField& a) {
  return VectorField([s, a](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    return S(s) * a(x);
  });
}
inline VectorField operator*(const ScalarField& f, const VectorField& a) {
  return VectorField([f, a](const auto& x) { return f(x) * a(x); });
}
inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](const auto& x) { return a(x) + b(x); });
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](const auto& x) { return a(x) - b(x); });
}
inline EndoField operator+(const EndoField& a, const EndoField& b) {
  return EndoField([a, b](const auto& x) { return a(x) + b(x); });
}
inline EndoField operator-(const EndoField& a, const EndoField& b) {
  return EndoField([a, b](const auto& x) { return a(x) - b(x); });
}
inline EndoField operator*(double s, const EndoField& a) {
  return EndoField([s, a](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    return S(s) * a(x);
  });
}

/// Coordinate basis field ∂_k.
inline VectorField coordinate_field(int dim, int k) {
  Vec<double> v(dim);
  v[k] = 1.0;
  return constant_field(v);
}

template <class S>
std::array<Vec<S>, kMaxDim> gram_schmidt(const Mat<S>& g) {
  const int n = g.n;
  std::array<Vec<S>, kMaxDim> f;
  for (int t = 0; t < n; ++t) {
    Vec<S> v(n);
    v[t] = S(1.0);
    for (int r = 0; r < t; ++r) v -= inner(g, f[r], v) * f[r];
    f[t] = (S(1.0) / sqrt(inner(g, v, v))) * v;
  }
  return f;
}

/// Field e_s = Σ_t q(t, s) f_t where f is the Gram-Schmidt frame of the
/// coordinate basis; q is a constant orthogonal matrix.
inline VectorField frame_field(const Chart& c, int s, const Mat<double>& q) {
  return VectorField([c, s, q](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const auto f = gram_schmidt(c.metric(x));
    Vec<S> e(x.n);
    for (int t = 0; t < x.n; ++t) e += S(q(t, s)) * f[t];
    return e;
  });
}

}  // namespace distgeom
