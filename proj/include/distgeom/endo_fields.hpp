#pragma once

#include <array>
#include <vector>

#include "distgeom/field_ops.hpp"
#include "distgeom/report.hpp"

namespace distgeom {

struct EndoPair {
  EndoField p1;
  EndoField p2;
};

/// The pair together with its metric adjoints, as fields on one chart.
struct PairFields {
  Chart chart;
  EndoField p1, p2, p1s, p2s;

  PairFields(const Chart& c, const EndoPair& pair)
      : chart(c),
        p1(pair.p1),
        p2(pair.p2),
        p1s(adjoint_field(c, pair.p1)),
        p2s(adjoint_field(c, pair.p2)) {}

  VectorField nab(const VectorField& dir, const VectorField& v) const {
    return nabla(chart, dir, v);
  }
};

/// P* = g^{-1} P^T g at x.
Mat<double> adjoint(const EndoField& P, const Chart& chart, const Vec<double>& x);

/// Max Frobenius norm of P1 P2*, P1* P2, P2 P1*, P2* P1 over the points.
/// Normalised by 1 + |P1|_F |P2|_F at each point.
ResidualReport check_pair(const EndoPair& pair, const Chart& chart,
                          const std::vector<Vec<double>>& points, double tol);

/// Max Frobenius norm of P_i* - P_i over the points (zero for self-adjoint pairs).
Residual self_adjoint_residual(const EndoPair& pair, const Chart& chart, const Vec<double>& x);

struct AllowedForms {
  /// b_1^(1), b_1^(2), b_2^(1), b_2^(2).
  std::array<Vec<double>, 4> b;
  /// Max-norm residual of each form with its term magnitudes.
  std::array<Residual, 4> residual;
};

AllowedForms allowed_forms(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                           const VectorField& X, const VectorField& Y);
AllowedForms allowed_forms(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                           const Vec<double>& X, const Vec<double>& Y);

/// The unique g-self-adjoint positive semidefinite square root of S.
/// Eigenvalues in [-1e-8, 0) are clamped to zero; below that NotPsdError.
Mat<double> sqrt_psd(const Mat<double>& S, const Mat<double>& g);

}  // namespace distgeom
