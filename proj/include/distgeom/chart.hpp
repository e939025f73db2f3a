#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "distgeom/errors.hpp"
#include "distgeom/field.hpp"

namespace distgeom {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A single coordinate chart with a metric field g_ij.
struct Chart {
  std::string name;
  int dim = 0;
  std::vector<Interval> domain;
  std::vector<bool> periodic;
  EndoField metric;
  /// Distance-like measure to an excluded set; absent when nothing is excluded.
  std::function<double(const Vec<double>&)> singular_distance;
  /// Finite box used for random sampling; defaults to the domain when empty.
  std::vector<Interval> sample_box;

  /// Wraps periodic coordinates and validates the point. Throws DomainError.
  Vec<double> locate(const Vec<double>& x) const;

  const Interval& sample_interval(int k) const {
    return sample_box.empty() ? domain[k] : sample_box[k];
  }
};

}  // namespace distgeom
