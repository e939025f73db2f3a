#include "distgeom/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "distgeom/chart_geometry.hpp"
#include "distgeom/dist_tensors.hpp"

namespace distgeom {

Parametrization periodic_box(const Chart& chart) {
  Parametrization p;
  for (int k = 0; k < chart.dim; ++k) {
    if (!chart.periodic[k]) throw UsageError("periodic_box needs a fully periodic chart");
    p.axes.push_back({chart.domain[k], AxisRule::periodic});
  }
  p.map = [](const Vec<double>& t, double& jac) {
    jac = 1.0;
    return t;
  };
  return p;
}

QuadratureGrid::QuadratureGrid(const Parametrization& param, std::vector<int> counts)
    : param_(param), counts_(std::move(counts)) {
  if (counts_.size() != param_.axes.size())
    throw UsageError("grid needs one node count per axis");
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    const int m = counts_[a];
    if (m < 1) throw UsageError("node counts must be positive");
    const Axis& ax = param_.axes[a];
    std::vector<double> t(m), w(m);
    if (ax.rule == AxisRule::periodic) {
      const double h = (ax.range.hi - ax.range.lo) / m;
      for (int i = 0; i < m; ++i) {
        t[i] = ax.range.lo + i * h;
        w[i] = h;
      }
    } else {
      std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
          table(gsl_integration_glfixed_table_alloc(m), &gsl_integration_glfixed_table_free);
      if (!table) throw UsageError("could not build Gauss-Legendre table");
      for (int i = 0; i < m; ++i)
        gsl_integration_glfixed_point(ax.range.lo, ax.range.hi, i, &t[i], &w[i], table.get());
    }
    t_.push_back(std::move(t));
    w_.push_back(std::move(w));
    total_ *= static_cast<std::size_t>(m);
  }
}

Vec<double> QuadratureGrid::node(std::size_t index, double& weight) const {
  const int d = static_cast<int>(counts_.size());
  Vec<double> t(d);
  weight = 1.0;
  for (int a = d - 1; a >= 0; --a) {
    const std::size_t m = static_cast<std::size_t>(counts_[a]);
    const std::size_t i = index % m;
    index /= m;
    t[a] = t_[a][i];
    weight *= w_[a][i];
  }
  double jac = 1.0;
  Vec<double> x = param_.map(t, jac);
  weight *= jac;
  return x;
}

namespace {

struct NodeValue {
  double raw = 0.0;
  double f = 0.0;
  double abs_f = 0.0;
  double vol = 0.0;
};

double sqrt_det_at(const Chart& chart, const Vec<double>& x) {
  return metric_factors(chart.metric(x)).sqrt_det;
}

// Weighted integrand values at every node, in node order.
std::vector<NodeValue> weighted_values(const Chart& chart, const PointFunction& f,
                                       const QuadratureGrid& grid, Exec exec) {
  return kernels::map(exec, grid.size(), [&](std::size_t k) {
    double w = 0.0;
    const Vec<double> x = grid.node(k, w);
    const double dv = w * sqrt_det_at(chart, x);
    const double v = f(x);
    return NodeValue{v, v * dv, std::abs(v) * dv, dv};
  });
}

struct Sums {
  double f = 0.0, abs_f = 0.0, vol = 0.0, max_raw = 0.0;
};

Sums reduce(const std::vector<NodeValue>& vals) {
  std::vector<double> a(vals.size()), b(vals.size()), c(vals.size());
  double m = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double r = std::abs(vals[i].raw);
    if (r > m || r != r) m = r;
    a[i] = vals[i].f;
    b[i] = vals[i].abs_f;
    c[i] = vals[i].vol;
  }
  return {kernels::pairwise_sum(a), kernels::pairwise_sum(b), kernels::pairwise_sum(c), m};
}

// Evenly strided subset of node indices used for precondition checks.
std::vector<std::size_t> probe_nodes(const QuadratureGrid& grid, std::size_t count) {
  std::vector<std::size_t> idx;
  const std::size_t n = grid.size();
  const std::size_t m = std::min(n, count);
  for (std::size_t i = 0; i < m; ++i) idx.push_back(i * n / m);
  return idx;
}

double max_over(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v)
    if (x > m || x != x) m = x;
  return m;
}

}  // namespace

double integrate(const Chart& chart, const PointFunction& f, const QuadratureGrid& grid,
                 Exec exec) {
  return reduce(weighted_values(chart, f, grid, exec)).f;
}

double integrate(const Chart& chart, const ScalarField& f, const QuadratureGrid& grid,
                 Exec exec) {
  return integrate(chart, PointFunction([&f](const Vec<double>& x) { return f(x); }), grid, exec);
}

double volume(const Chart& chart, const QuadratureGrid& grid, Exec exec) {
  return integrate(chart, PointFunction([](const Vec<double>&) { return 1.0; }), grid, exec);
}

IntegralResult stokes_check(const EndoField& P, const Chart& chart, const VectorField& X,
                            const QuadratureGrid& grid, double tol,
                            const QuadratureTolerances& q, Exec exec) {
  IntegralResult out;
  const EndoField pps = compose(P, adjoint_field(chart, P));
  const auto probes = probe_nodes(grid, q.precondition_nodes);
  const auto pre = kernels::map(exec, probes.size(), [&](std::size_t i) {
    double w = 0.0;
    const Vec<double> x = grid.node(probes[i], w);
    const Mat<double> pm = pps(x);
    return max_abs(div_endo(chart, pps, x)) / (1.0 + frobenius(pm));
  });
  out.precondition = max_over(pre);
  out.precondition_ok = out.precondition <= q.precondition;

  const Sums s = reduce(weighted_values(
      chart, [&](const Vec<double>& x) { return div_p(P, chart, X, x); }, grid, exec));
  out.integral = s.f;
  out.abs_integral = s.abs_f;
  out.volume = s.vol;
  out.max_pointwise = s.max_raw;

  ResidualReport& r = out.report;
  r.check = "stokes";
  r.samples = static_cast<std::int64_t>(grid.size());
  r.max_abs = std::abs(s.f);
  r.max_normalized = std::abs(s.f) / s.vol;
  r.tolerance = tol;
  r.pass = out.precondition_ok && r.max_normalized <= tol;
  r.grid = grid.counts();
  return out;
}

IntegralResult integral_formula_check(const EndoPair& pair, const Chart& chart,
                                      const QuadratureGrid& grid,
                                      const QuadratureTolerances& q, Exec exec) {
  IntegralResult out;
  const EndoField psq = compose(pair.p1 + pair.p2, pair.p1 + pair.p2);
  const auto probes = probe_nodes(grid, q.precondition_nodes);
  const int n = chart.dim;
  const auto pre = kernels::map(exec, probes.size(), [&](std::size_t i) {
    double w = 0.0;
    const Vec<double> x = grid.node(probes[i], w);
    double worst = self_adjoint_residual(pair, chart, x).normalized();
    worst = std::max(worst, max_abs(div_endo(chart, psq, x)) / (1.0 + frobenius(psq(x))));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Vec<double> ea(n), eb(n);
        ea[a] = 1.0;
        eb[b] = 1.0;
        const AllowedForms af = allowed_forms(pair, chart, x, ea, eb);
        for (const Residual& res : af.residual) worst = std::max(worst, res.normalized());
      }
    return worst;
  });
  out.precondition = max_over(pre);
  out.precondition_ok = out.precondition <= q.precondition;

  const Sums s = reduce(weighted_values(
      chart, [&](const Vec<double>& x) { return dist_invariants(pair, chart, x).walczak_rhs(); },
      grid, exec));
  out.integral = s.f;
  out.abs_integral = s.abs_f;
  out.volume = s.vol;
  out.max_pointwise = s.max_raw;

  const double abs_tol = q.abs_rel_volume * s.vol;
  out.degenerate = s.abs_f <= q.degenerate_rel_volume * s.vol;

  ResidualReport& r = out.report;
  r.check = "formula";
  r.samples = static_cast<std::int64_t>(grid.size());
  r.max_abs = std::abs(s.f);
  r.max_normalized = std::abs(s.f) / std::max(s.abs_f, abs_tol / q.rel);
  r.tolerance = q.rel;
  r.degenerate = out.degenerate;
  r.pass = out.precondition_ok && (out.degenerate || r.max_normalized <= q.rel);
  r.grid = grid.counts();
  return out;
}

}  // namespace distgeom
