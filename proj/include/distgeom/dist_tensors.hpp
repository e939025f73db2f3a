#pragma once

#include <array>
#include <functional>
#include <vector>

#include "distgeom/chart_geometry.hpp"
#include "distgeom/endo_fields.hpp"

namespace distgeom {

/// Field-level builders for the distribution tensors of a pair. Arguments are
/// vector fields; the results are fields, so they can be differentiated again.
class DistFields : public PairFields {
 public:
  using PairFields::PairFields;

  EndoField p_sum() const { return p1 + p2; }
  EndoField p_sum_adjoint() const { return p1s + p2s; }

  // Structural tensors. Slot order: B1, hB1, cB1 take (Y, X); B2, hB2, cB2 take (X, Y).
  VectorField B1(const VectorField& Y, const VectorField& X) const;
  VectorField B2(const VectorField& X, const VectorField& Y) const;
  VectorField hB1(const VectorField& Y, const VectorField& X) const;
  VectorField hB2(const VectorField& X, const VectorField& Y) const;
  VectorField cB1(const VectorField& Y, const VectorField& X) const;
  VectorField cB2(const VectorField& X, const VectorField& Y) const;

  /// T1, T2, S1, S2, R^P as scalar fields of (Y, X1, X2, Z).
  std::array<ScalarField, 5> tsr(const VectorField& Y, const VectorField& X1,
                                 const VectorField& X2, const VectorField& Z) const;
  /// The five summands of R^P before pairing with Z.
  std::array<VectorField, 5> rp_terms(const VectorField& Y, const VectorField& X1,
                                      const VectorField& X2) const;

  /// Unprojected second-fundamental-form data: ∇_{P1 X} P1 Y and ∇_{P2 X} P2 Y.
  VectorField d1(const VectorField& X, const VectorField& Y) const {
    return nab(apply(p1, X), apply(p1, Y));
  }
  VectorField d2(const VectorField& X, const VectorField& Y) const {
    return nab(apply(p2, X), apply(p2, Y));
  }

  /// Mean curvature fields H1 = Σ P2 ∇_{P1 e_s} P1 e_s and H2 = Σ P1 ∇_{P2 e_s} P2 e_s
  /// over the frame rotated by q.
  VectorField H1(const Mat<double>& q) const;
  VectorField H2(const Mat<double>& q) const;

  std::vector<VectorField> frame(const Mat<double>& q) const;
};

struct BTensors {
  Vec<double> b1, b2, hb1, hb2, cb1, cb2;
};

BTensors b_tensors(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                   const VectorField& X, const VectorField& Y);
BTensors b_tensors(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                   const Vec<double>& X, const Vec<double>& Y);

/// P2 B2(X,Y) - hB2(X, P2 Y), P2 B2(X,Y) - cB2(P1 X, Y),
/// P1 B1(Y,X) - hB1(Y, P1 X), P1 B1(Y,X) - cB1(P2 Y, X).
struct Lemma1Residuals {
  std::array<Vec<double>, 4> diff;
  std::array<Residual, 4> residual;
};
Lemma1Residuals lemma1_residual(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                                const VectorField& X, const VectorField& Y);

struct TsrValues {
  double t1 = 0, t2 = 0, s1 = 0, s2 = 0, rp = 0;
  double sum() const { return t1 + t2 + s1 + s2 + rp; }
  double abs_terms() const;
};
TsrValues tsr_tensors(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                      const VectorField& Y, const VectorField& X1, const VectorField& X2,
                      const VectorField& Z);

/// S1 + T1 + S2 + T2 + R^P, normalised by 1 + the sum of the term magnitudes.
Residual codazzi_residual(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                          const VectorField& Y, const VectorField& X1, const VectorField& X2,
                          const VectorField& Z);

struct DistInvariants {
  int n = 0;
  /// h1[s * n + t] = h1(e_s, e_t); same layout for h2, t1, t2.
  std::vector<Vec<double>> h1, h2, t1, t2;
  Vec<double> H1, H2;
  double h1_sq = 0, h2_sq = 0, t1_sq = 0, t2_sq = 0, H1_sq = 0, H2_sq = 0;
  double smix = 0;
  /// Right-hand side of the pointwise Walczak-type identity.
  double walczak_rhs() const { return smix + h1_sq + h2_sq - t1_sq - t2_sq - H1_sq - H2_sq; }
  double abs_terms() const;
};

/// Frame sums over the Gram-Schmidt frame rotated by the orthogonal matrix q.
DistInvariants dist_invariants(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                               const Mat<double>& q);
DistInvariants dist_invariants(const EndoPair& pair, const Chart& chart, const Vec<double>& x);

struct DivPForms {
  double trace = 0.0;       ///< trace(Y -> P* ∇_{PY} X)
  double coordinate = 0.0;  ///< (PP*)^i_j X^j_,i + ½ (PP*)^{ij} g_ij,k X^k
};
DivPForms div_p_forms(const EndoField& P, const Chart& chart, const VectorField& X,
                      const Vec<double>& x);
double div_p(const EndoField& P, const Chart& chart, const VectorField& X, const Vec<double>& x);

/// div_P of a field known only through point evaluations: partials by central
/// differences at steps h and h/2 combined by Richardson extrapolation.
using PointField = std::function<Vec<double>(const Vec<double>&)>;
double div_p_fd(const EndoField& P, const Chart& chart, const PointField& X,
                const Vec<double>& x, double h = 1e-4);

struct Prop3Residuals {
  Residual vs_div;      ///< div_P X vs div(PP* X)
  Residual vs_inner;    ///< div_P X vs <PP*, ∇X>
  Residual leibniz;     ///< div_P(fX) vs f div(PP* X) + (PP* X)(f)
  Vec<double> div_pps;  ///< div(PP*) at the point (the precondition)
  double div_pps_x = 0; ///< <X, div(PP*)>, the predicted first discrepancy
};
Prop3Residuals prop3_residuals(const EndoField& P, const Chart& chart, const VectorField& X,
                               const ScalarField& f, const Vec<double>& x);

struct WalczakResult {
  double lhs = 0.0;  ///< div_P(H1 + H2), finite-difference partials
  double rhs = 0.0;
  Residual residual;
  DistInvariants inv;
};
WalczakResult walczak_pointwise_residual(const EndoPair& pair, const Chart& chart,
                                         const Vec<double>& x);

/// Frame-trace identities for T1, T2, S2, S1 (both sides) and the helper
/// identity whose left side vanishes.
struct TraceLemmas {
  std::array<double, 5> lhs{};
  std::array<double, 5> rhs{};
  std::array<Residual, 5> residual;
};
TraceLemmas trace_lemma_residuals(const EndoPair& pair, const Chart& chart, const Vec<double>& x,
                                  const Mat<double>& q);
TraceLemmas trace_lemma_residuals(const EndoPair& pair, const Chart& chart,
                                  const Vec<double>& x);

struct ContactResidual {
  double structure = 0.0;   ///< max of the structure-equation residuals
  double lhs = 0.0;         ///< div(φφ*)(X)
  double closed_plus = 0.0;  ///< -<∇_ξ ξ + (div ξ) ξ, X>
  double closed_minus = 0.0; ///< -<∇_ξ ξ - (div ξ) ξ, X>
  Residual plus;
  Residual minus;
  double div_xi = 0.0;
  double adjoint_identity = 0.0;  ///< |φφ* - (id - η⊗ξ)|
};
/// η is taken as g(ξ, ·). Throws StructuralError when φ² = -id + η⊗ξ or
/// η(ξ) = 1 fails by more than 1e-9.
ContactResidual contact_identity_residual(const EndoField& phi, const VectorField& xi,
                                          const Chart& chart, const Vec<double>& X,
                                          const Vec<double>& x);

}  // namespace distgeom
