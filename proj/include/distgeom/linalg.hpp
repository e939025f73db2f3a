#pragma once

// Fixed-capacity vectors and square matrices over any scalar type, so the same
// code runs on double and on nested dual numbers.

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "distgeom/dual.hpp"

namespace distgeom {

inline constexpr int kMaxDim = 6;

template <class S>
struct Vec {
  int n = 0;
  std::array<S, kMaxDim> a{};

  Vec() = default;
  explicit Vec(int dim) : n(dim) {
    assert(dim >= 0 && dim <= kMaxDim);
  }
  Vec(std::initializer_list<S> xs) : n(static_cast<int>(xs.size())) {
    assert(n <= kMaxDim);
    int i = 0;
    for (const S& x : xs) a[i++] = x;
  }
  template <class U>
    requires(!std::is_same_v<U, S> && std::is_convertible_v<const U&, S>)
  Vec(const Vec<U>& o) : n(o.n) {  // NOLINT: implicit lift to a dual type
    for (int i = 0; i < n; ++i) a[i] = S(o[i]);
  }

  int size() const { return n; }
  S& operator[](int i) { return a[i]; }
  const S& operator[](int i) const { return a[i]; }

  friend Vec operator+(Vec x, const Vec& y) {
    for (int i = 0; i < x.n; ++i) x.a[i] += y.a[i];
    return x;
  }
  friend Vec operator-(Vec x, const Vec& y) {
    for (int i = 0; i < x.n; ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend Vec operator-(Vec x) {
    for (int i = 0; i < x.n; ++i) x.a[i] = -x.a[i];
    return x;
  }
  friend Vec operator*(const S& s, Vec x) {
    for (int i = 0; i < x.n; ++i) x.a[i] = s * x.a[i];
    return x;
  }
  friend Vec operator*(Vec x, const S& s) { return s * std::move(x); }
  Vec& operator+=(const Vec& y) { return *this = *this + y; }
  Vec& operator-=(const Vec& y) { return *this = *this - y; }
};

template <class S>
struct Mat {
  int n = 0;
  std::array<S, kMaxDim * kMaxDim> a{};

  Mat() = default;
  explicit Mat(int dim) : n(dim) {
    assert(dim >= 0 && dim <= kMaxDim);
  }
  template <class U>
    requires(!std::is_same_v<U, S> && std::is_convertible_v<const U&, S>)
  Mat(const Mat<U>& o) : n(o.n) {  // NOLINT: implicit lift to a dual type
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) = S(o(i, j));
  }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = S(1.0);
    return m;
  }

  int size() const { return n; }
  S& operator()(int i, int j) { return a[i * kMaxDim + j]; }
  const S& operator()(int i, int j) const { return a[i * kMaxDim + j]; }

  friend Mat operator+(Mat x, const Mat& y) {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) x(i, j) += y(i, j);
    return x;
  }
  friend Mat operator-(Mat x, const Mat& y) {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) x(i, j) -= y(i, j);
    return x;
  }
  friend Mat operator-(Mat x) {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) x(i, j) = -x(i, j);
    return x;
  }
  friend Mat operator*(const S& s, Mat x) {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) x(i, j) = s * x(i, j);
    return x;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        const S xik = x(i, k);
        for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend Vec<S> operator*(const Mat& x, const Vec<S>& v) {
    Vec<S> r(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) r[i] += x(i, j) * v[j];
    return r;
  }
};

template <class S>
Mat<S> transpose(const Mat<S>& m) {
  Mat<S> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = m(j, i);
  return r;
}

template <class S>
S trace(const Mat<S>& m) {
  S t(0.0);
  for (int i = 0; i < m.n; ++i) t += m(i, i);
  return t;
}

template <class S>
S dot(const Vec<S>& x, const Vec<S>& y) {
  S t(0.0);
  for (int i = 0; i < x.n; ++i) t += x[i] * y[i];
  return t;
}

/// x^T g y.
template <class S>
S inner(const Mat<S>& g, const Vec<S>& x, const Vec<S>& y) {
  return dot(x, g * y);
}

/// u ⊗ w as the endomorphism v ↦ w(v) u, with w given as a covector.
template <class S>
Mat<S> outer(const Vec<S>& u, const Vec<S>& w) {
  Mat<S> r(u.n);
  for (int i = 0; i < u.n; ++i)
    for (int j = 0; j < u.n; ++j) r(i, j) = u[i] * w[j];
  return r;
}

template <class S>
Vec<double> primal(const Vec<S>& v) {
  Vec<double> r(v.n);
  for (int i = 0; i < v.n; ++i) r[i] = primal(v[i]);
  return r;
}

template <class S>
Mat<double> primal(const Mat<S>& m) {
  Mat<double> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = primal(m(i, j));
  return r;
}

/// Value and first-layer derivative parts of a dual-valued vector.
template <class S>
Vec<S> value_part(const Vec<Dual<S>>& v) {
  Vec<S> r(v.n);
  for (int i = 0; i < v.n; ++i) r[i] = v[i].val;
  return r;
}
template <class S>
Vec<S> eps_part(const Vec<Dual<S>>& v) {
  Vec<S> r(v.n);
  for (int i = 0; i < v.n; ++i) r[i] = v[i].eps;
  return r;
}
template <class S>
Mat<S> value_part(const Mat<Dual<S>>& m) {
  Mat<S> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = m(i, j).val;
  return r;
}
template <class S>
Mat<S> eps_part(const Mat<Dual<S>>& m) {
  Mat<S> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = m(i, j).eps;
  return r;
}
template <class S>
S value_part(const Dual<S>& x) {
  return x.val;
}
template <class S>
S eps_part(const Dual<S>& x) {
  return x.eps;
}

/// Lower Cholesky factor of a symmetric positive definite matrix. Returns false
/// when a pivot is not strictly positive.
template <class S>
bool cholesky(const Mat<S>& m, Mat<S>& l) {
  const int n = m.n;
  l = Mat<S>(n);
  for (int j = 0; j < n; ++j) {
    S d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(primal(d) > 0.0)) return false;
    l(j, j) = sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      S s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

/// Inverse of a lower-triangular matrix.
template <class S>
Mat<S> lower_inverse(const Mat<S>& l) {
  const int n = l.n;
  Mat<S> r(n);
  for (int j = 0; j < n; ++j) {
    r(j, j) = S(1.0) / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      S s(0.0);
      for (int k = j; k < i; ++k) s -= l(i, k) * r(k, j);
      r(i, j) = s / l(i, i);
    }
  }
  return r;
}

template <class S>
struct SpdFactors {
  Mat<S> inv;
  S sqrt_det;
};

/// Inverse and sqrt(det) of an SPD matrix via Cholesky; throws when not SPD.
template <class S>
SpdFactors<S> spd_factor(const Mat<S>& m) {
  Mat<S> l;
  if (!cholesky(m, l)) throw std::domain_error("matrix is not positive definite");
  Mat<S> li = lower_inverse(l);
  SpdFactors<S> f{transpose(li) * li, S(1.0)};
  for (int i = 0; i < m.n; ++i) f.sqrt_det = f.sqrt_det * l(i, i);
  return f;
}

inline double frobenius(const Mat<double>& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

inline double max_abs(const Mat<double>& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

inline double max_abs(const Vec<double>& v) {
  double s = 0.0;
  for (int i = 0; i < v.n; ++i) s = std::max(s, std::abs(v[i]));
  return s;
}

inline double norm2(const Vec<double>& v) { return std::sqrt(dot(v, v)); }

}  // namespace distgeom
