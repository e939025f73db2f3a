#pragma once

#include <array>
#include <vector>

#include "distgeom/field_ops.hpp"

namespace distgeom {

struct MetricJet {
  int n = 0;
  Mat<double> g;
  Mat<double> g_inv;
  /// dg[k](i, j) = ∂_k g_ij.
  std::array<Mat<double>, kMaxDim> dg;
  /// d2g[l][k](i, j) = ∂_l ∂_k g_ij.
  std::array<std::array<Mat<double>, kMaxDim>, kMaxDim> d2g;
  double sqrt_det = 0.0;
};

struct ConnectionCoeffs {
  int n = 0;
  /// gamma[k](i, j) = Γ^k_ij.
  std::array<Mat<double>, kMaxDim> gamma;
};

/// Fully covariant curvature R_ijkl = <R(e_i, e_j) e_k, e_l> with
/// R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_[X,Y] Z.
struct Riemann {
  int n = 0;
  std::vector<double> r;
  double operator()(int i, int j, int k, int l) const { return r[((i * n + j) * n + k) * n + l]; }
  double& operator()(int i, int j, int k, int l) { return r[((i * n + j) * n + k) * n + l]; }
  /// R(a, b, c, d) for vectors.
  double eval(const Vec<double>& a, const Vec<double>& b, const Vec<double>& c,
              const Vec<double>& d) const;
};

MetricJet metric_jet(const Chart& chart, const Vec<double>& x);
ConnectionCoeffs christoffel(const MetricJet& jet);
Riemann riemann(const Chart& chart, const Vec<double>& x);
/// Ricci tensor Ric_jk (covariant).
Mat<double> ricci(const Chart& chart, const Vec<double>& x);
/// Einstein tensor Ric - Scal g / 2 in mixed form E^a_b. Requires dim >= 3.
Mat<double> einstein_tensor(const Chart& chart, const Vec<double>& x);

/// Matrix m(k, i) = ∇_i X^k, so that m * v = ∇_v X.
Mat<double> cov_deriv_vector(const Chart& chart, const VectorField& X, const Vec<double>& x);

struct DivForms {
  double trace = 0.0;    ///< trace of the covariant derivative
  double density = 0.0;  ///< (1/√g) ∂_i(√g X^i)
};
DivForms div_vector_forms(const Chart& chart, const VectorField& X, const Vec<double>& x);
double div_vector(const Chart& chart, const VectorField& X, const Vec<double>& x);

struct DivEndoForms {
  Vec<double> trace;    ///< ∇_i S^i_j from Christoffel symbols
  Vec<double> density;  ///< √g-weighted coordinate formula
};
DivEndoForms div_endo_forms(const Chart& chart, const EndoField& S, const Vec<double>& x);
/// Covector (div S)_j = ∇_i S^i_j.
Vec<double> div_endo(const Chart& chart, const EndoField& S, const Vec<double>& x);

/// <A, B> = A^i_j B^k_l g_ik g^jl for mixed tensors.
double endo_inner(const Mat<double>& g, const Mat<double>& ginv, const Mat<double>& a,
                  const Mat<double>& b);

}  // namespace distgeom
