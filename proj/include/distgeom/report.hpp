#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace distgeom {

struct ResidualReport {
  std::string scenario;
  std::string check;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double max_abs = 0.0;
  double max_normalized = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<bool> degenerate;
  std::optional<std::vector<int>> grid;
  std::int64_t runtime_ms = 0;
};

/// Ordered JSON object with the report's fields.
nlohmann::ordered_json to_json(const ResidualReport& r);

/// Residual with the magnitude of the terms it was formed from.
struct Residual {
  double abs = 0.0;
  double terms = 0.0;
  double normalized() const { return abs / (1.0 + terms); }
};

/// Running max over residuals.
struct ResidualMax {
  double max_abs = 0.0;
  double max_normalized = 0.0;
  void add(const Residual& r) {
    if (r.abs > max_abs || r.abs != r.abs) max_abs = r.abs;
    const double n = r.normalized();
    if (n > max_normalized || n != n) max_normalized = n;
  }
};

}  // namespace distgeom
