#pragma once

#include <functional>
#include <vector>

#include "distgeom/chart.hpp"
#include "distgeom/endo_fields.hpp"
#include "distgeom/kernels.hpp"
#include "distgeom/report.hpp"

namespace distgeom {

enum class AxisRule { periodic, gauss };

struct Axis {
  Interval range;
  AxisRule rule = AxisRule::periodic;
};

/// Integration coordinates t for a chart: x = map(t), with jac = |det dx/dt|.
/// The t-box is compact even when the chart is not.
struct Parametrization {
  std::vector<Axis> axes;
  std::function<Vec<double>(const Vec<double>& t, double& jac)> map;
};

/// Identity parametrization of a chart whose coordinates are all periodic.
Parametrization periodic_box(const Chart& chart);

/// Tensor-product grid. Node weights include the Jacobian of the
/// parametrization; √det g is applied at integration time.
class QuadratureGrid {
 public:
  QuadratureGrid(const Parametrization& param, std::vector<int> counts);

  std::size_t size() const { return total_; }
  const std::vector<int>& counts() const { return counts_; }
  /// Chart point and weight of the flat node index.
  Vec<double> node(std::size_t index, double& weight) const;

 private:
  Parametrization param_;
  std::vector<int> counts_;
  std::vector<std::vector<double>> t_, w_;
  std::size_t total_ = 1;
};

using PointFunction = std::function<double(const Vec<double>&)>;

/// Σ w_k f(x_k) √det g(x_k).
double integrate(const Chart& chart, const PointFunction& f, const QuadratureGrid& grid,
                 Exec exec = Exec::parallel);
double integrate(const Chart& chart, const ScalarField& f, const QuadratureGrid& grid,
                 Exec exec = Exec::parallel);
double volume(const Chart& chart, const QuadratureGrid& grid, Exec exec = Exec::parallel);

struct QuadratureTolerances {
  double abs_rel_volume = 1e-8;  ///< abs_tol as a multiple of the volume
  double rel = 1e-6;
  double degenerate_rel_volume = 1e-9;
  double precondition = 1e-8;
  std::size_t precondition_nodes = 128;
};

struct IntegralResult {
  double integral = 0.0;
  double abs_integral = 0.0;  ///< ∫ |integrand|
  double volume = 0.0;
  double max_pointwise = 0.0;  ///< max |integrand| over the nodes
  double precondition = 0.0;  ///< worst precondition residual seen on grid nodes
  bool precondition_ok = true;
  bool degenerate = false;
  ResidualReport report;
};

/// ∫ div_P X d vol. Normalised residual is |I| / Vol; the check is skipped
/// (pass = false) when div(PP*) fails on the sampled grid nodes.
IntegralResult stokes_check(const EndoField& P, const Chart& chart, const VectorField& X,
                            const QuadratureGrid& grid, double tol = 1e-6,
                            const QuadratureTolerances& q = {}, Exec exec = Exec::parallel);

/// ∫ (Walczak right-hand side) d vol under self-adjointness, allowedness and
/// div(P^2) = 0. Normalised residual |I| / max(N, abs_tol / rel_tol), with
/// N = ∫ |integrand|; tolerance rel_tol; N ≤ 1e-9 Vol marks it degenerate.
IntegralResult integral_formula_check(const EndoPair& pair, const Chart& chart,
                                      const QuadratureGrid& grid,
                                      const QuadratureTolerances& q = {},
                                      Exec exec = Exec::parallel);

}  // namespace distgeom
