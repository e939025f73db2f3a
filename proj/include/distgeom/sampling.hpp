#pragma once

#include <cstdint>
#include <vector>

#include "distgeom/chart.hpp"

namespace distgeom {

/// Counter-based generator: stream (seed, index, slot) gives an independent,
/// order-free sequence, so samples do not depend on evaluation order.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index, std::uint64_t slot);
  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform point in the chart's sampling box, resampled until it is at least
/// `margin` from every non-periodic boundary and from the excluded locus.
Vec<double> sample_point(const Chart& chart, SampleRng& rng, double margin = 1e-3);
std::vector<Vec<double>> sample_points(const Chart& chart, std::uint64_t seed, int count);

Vec<double> sample_vector(int dim, SampleRng& rng);
/// Random orthogonal matrix from the sign-fixed QR factor of a uniform matrix.
Mat<double> sample_rotation(int dim, SampleRng& rng);

}  // namespace distgeom
