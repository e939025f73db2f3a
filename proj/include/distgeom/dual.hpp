#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> gives second
// derivatives; every derivative level adds one outer layer and reads back only
// the layer it seeded, so nested directional derivatives never mix.

#include <cmath>
#include <type_traits>

namespace distgeom {

using std::abs;
using std::atan;
using std::atan2;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T>
struct Dual {
  T val{};
  T eps{};

  constexpr Dual() = default;

  template <class U>
    requires std::is_convertible_v<const U&, T>
  constexpr Dual(const U& v) : val(v), eps(0.0) {}  // NOLINT: implicit lift

  constexpr Dual(const T& v, const T& e) : val(v), eps(e) {}

  friend constexpr Dual operator+(const Dual& a) { return a; }
  friend constexpr Dual operator-(const Dual& a) { return {-a.val, -a.eps}; }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    return {a.val + b.val, a.eps + b.eps};
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    return {a.val - b.val, a.eps - b.eps};
  }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.val * b.eps + a.eps * b.val};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1.0) / b.val;
    const T q = a.val * inv;
    return {q, (a.eps - q * b.eps) * inv};
  }

  // Scalar shortcuts: cheaper than lifting the double to a full Dual.
  friend constexpr Dual operator*(double s, const Dual& a) { return {s * a.val, s * a.eps}; }
  friend constexpr Dual operator*(const Dual& a, double s) { return {a.val * s, a.eps * s}; }
  friend constexpr Dual operator/(const Dual& a, double s) { return {a.val / s, a.eps / s}; }
  friend constexpr Dual operator+(const Dual& a, double s) { return {a.val + s, a.eps}; }
  friend constexpr Dual operator+(double s, const Dual& a) { return {s + a.val, a.eps}; }
  friend constexpr Dual operator-(const Dual& a, double s) { return {a.val - s, a.eps}; }
  friend constexpr Dual operator-(double s, const Dual& a) { return {s - a.val, -a.eps}; }

  constexpr Dual& operator+=(const Dual& b) { return *this = *this + b; }
  constexpr Dual& operator-=(const Dual& b) { return *this = *this - b; }
  constexpr Dual& operator*=(const Dual& b) { return *this = *this * b; }
  constexpr Dual& operator/=(const Dual& b) { return *this = *this / b; }

  friend constexpr bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
  friend constexpr bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
  friend constexpr bool operator<=(const Dual& a, const Dual& b) { return a.val <= b.val; }
  friend constexpr bool operator>=(const Dual& a, const Dual& b) { return a.val >= b.val; }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Number of nested dual layers (0 for double).
template <class T>
struct dual_depth : std::integral_constant<int, 0> {};
template <class T>
struct dual_depth<Dual<T>> : std::integral_constant<int, 1 + dual_depth<T>::value> {};

using D1 = Dual<double>;
using D2 = Dual<D1>;

inline constexpr double primal(double x) { return x; }
template <class T>
constexpr double primal(const Dual<T>& x) {
  return primal(x.val);
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.val), cos(x.val) * x.eps};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.val), -(sin(x.val) * x.eps)};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  const T t = tan(x.val);
  return {t, (T(1.0) + t * t) * x.eps};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  const T e = exp(x.val);
  return {e, e * x.eps};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.val), x.eps / x.val};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  const T r = sqrt(x.val);
  return {r, x.eps / (2.0 * r)};
}
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  const T r = pow(x.val, p);
  return {r, p * pow(x.val, p - 1.0) * x.eps};
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  return {atan(x.val), x.eps / (T(1.0) + x.val * x.val)};
}
// Derivative taken from the side of the current sign; at exactly zero the
// right derivative is used.
template <class T>
Dual<T> abs(const Dual<T>& x) {
  return primal(x.val) < 0.0 ? -x : x;
}

}  // namespace distgeom
