#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "distgeom/chart_geometry.hpp"

namespace testsupport {

using namespace distgeom;
inline constexpr double kPi = std::numbers::pi;

inline Chart periodic_chart(const std::string& name, int n, EndoField metric) {
  Chart c;
  c.name = name;
  c.dim = n;
  c.domain.assign(n, Interval{0.0, 2.0 * kPi});
  c.periodic.assign(n, true);
  c.metric = std::move(metric);
  return c;
}

inline Chart euclidean(int n) {
  return periodic_chart("flat", n, constant_endo(Mat<double>::identity(n)));
}

/// g = (1 + sin^2 u) I on T^2.
inline Chart conformal_torus() {
  return periodic_chart("conformal", 2, EndoField([](const auto& x) {
                          using S = std::decay_t<decltype(x[0])>;
                          const S s = sin(x[0]);
                          Mat<S> g(2);
                          g(0, 0) = 1.0 + s * s;
                          g(1, 1) = g(0, 0);
                          return g;
                        }));
}

/// g = diag(1, e^{2 sin u}).
inline Chart warped(double amp = 1.0) {
  return periodic_chart("warped", 2, EndoField([amp](const auto& x) {
                          using S = std::decay_t<decltype(x[0])>;
                          Mat<S> g(2);
                          g(0, 0) = S(1.0);
                          g(1, 1) = exp(2.0 * amp * sin(x[0]));
                          return g;
                        }));
}

/// Round S^3 in stereographic coordinates, g = λ^2 I with λ = 2 / (1 + r^2).
inline Chart round_s3() {
  Chart c;
  c.name = "s3";
  c.dim = 3;
  c.domain.assign(3, Interval{-INFINITY, INFINITY});
  c.periodic.assign(3, false);
  c.sample_box.assign(3, Interval{-2.0, 2.0});
  c.metric = EndoField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const S lam = 2.0 / (1.0 + r2);
    Mat<S> g(3);
    for (int i = 0; i < 3; ++i) g(i, i) = lam * lam;
    return g;
  });
  return c;
}

/// A non-diagonal, non-constant metric on T^3 used to stress generic code paths.
inline Chart skew_torus() {
  return periodic_chart("skew", 3, EndoField([](const auto& x) {
                          using S = std::decay_t<decltype(x[0])>;
                          Mat<S> g(3);
                          g(0, 0) = 2.0 + sin(x[1]);
                          g(1, 1) = 2.0 + cos(x[0] + x[2]);
                          g(2, 2) = 3.0 + 0.5 * sin(x[0]) * cos(x[1]);
                          g(0, 1) = 0.3 * cos(x[2]);
                          g(1, 0) = g(0, 1);
                          g(0, 2) = 0.2 * sin(x[0] + x[1]);
                          g(2, 0) = g(0, 2);
                          g(1, 2) = 0.25 * cos(x[0]);
                          g(2, 1) = g(1, 2);
                          return g;
                        }));
}

inline Vec<double> random_point(const Chart& c, std::mt19937_64& rng) {
  Vec<double> x(c.dim);
  for (int k = 0; k < c.dim; ++k) {
    const Interval& iv = c.sample_interval(k);
    x[k] = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
  }
  return x;
}

inline Vec<double> random_vec(int n, std::mt19937_64& rng) {
  Vec<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  return v;
}

inline Mat<double> random_mat(int n, std::mt19937_64& rng) {
  Mat<double> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  return m;
}

/// Smooth vector field with trigonometric components, random coefficients.
inline VectorField trig_field(int n, std::mt19937_64& rng) {
  Mat<double> a = random_mat(n, rng);
  Mat<double> b = random_mat(n, rng);
  Vec<double> c = random_vec(n, rng);
  return VectorField([a, b, c](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    Vec<S> v(x.n);
    for (int k = 0; k < x.n; ++k) {
      S s = S(c[k]);
      for (int j = 0; j < x.n; ++j) s += a(k, j) * sin(x[j]) + b(k, j) * cos(x[j]);
      v[k] = s;
    }
    return v;
  });
}

/// Central difference of a matrix-valued function along coordinate k.
template <class F>
Mat<double> fd_mat(F f, Vec<double> x, int k, double h = 1e-4) {
  Vec<double> xp = x, xm = x;
  xp[k] += h;
  xm[k] -= h;
  return (1.0 / (2.0 * h)) * (f(xp) - f(xm));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace testsupport
