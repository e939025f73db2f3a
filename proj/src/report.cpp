#include "distgeom/report.hpp"

namespace distgeom {

nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["check"] = r.check;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["max_abs"] = r.max_abs;
  j["max_normalized"] = r.max_normalized;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  if (r.degenerate) j["degenerate"] = *r.degenerate;
  if (r.grid) j["grid"] = *r.grid;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

}  // namespace distgeom
