#pragma once

#include <stdexcept>
#include <string>

namespace distgeom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Point outside the chart domain or on the excluded locus.
struct DomainError : Error {
  using Error::Error;
};

/// Metric not positive definite at the evaluation point.
struct MetricError : Error {
  using Error::Error;
};

/// Matrix square root requested for an operator with a negative eigenvalue.
struct NotPsdError : Error {
  using Error::Error;
};

/// Almost contact structure equations violated.
struct StructuralError : Error {
  using Error::Error;
};

/// Scenario failed its own expected-flag verification, or unknown name.
struct ScenarioError : Error {
  using Error::Error;
};

/// Bad arguments to a batch driver (empty sample set, bad grid, unknown check).
struct UsageError : Error {
  using Error::Error;
};

}  // namespace distgeom
