#include "distgeom/sampling.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace distgeom {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index, std::uint64_t slot)
    : state_(splitmix64(splitmix64(splitmix64(seed) ^ index) ^ slot)) {}

std::uint64_t SampleRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SampleRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Vec<double> sample_point(const Chart& chart, SampleRng& rng, double margin) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vec<double> x(chart.dim);
    bool ok = true;
    for (int k = 0; k < chart.dim; ++k) {
      const Interval& box = chart.sample_interval(k);
      x[k] = rng.uniform(box.lo, box.hi);
      if (!chart.periodic[k]) {
        const Interval& d = chart.domain[k];
        if (x[k] - d.lo < margin || d.hi - x[k] < margin) ok = false;
      }
    }
    if (ok && chart.singular_distance && chart.singular_distance(x) < margin) ok = false;
    if (ok) return x;
  }
  throw UsageError("could not sample an admissible point in chart " + chart.name);
}

std::vector<Vec<double>> sample_points(const Chart& chart, std::uint64_t seed, int count) {
  std::vector<Vec<double>> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    SampleRng rng(seed, static_cast<std::uint64_t>(i), 0);
    pts.push_back(sample_point(chart, rng));
  }
  return pts;
}

Vec<double> sample_vector(int dim, SampleRng& rng) {
  Vec<double> v(dim);
  for (int k = 0; k < dim; ++k) v[k] = rng.uniform(-1.0, 1.0);
  return v;
}

Mat<double> sample_rotation(int dim, SampleRng& rng) {
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  Mat<double> m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = q(i, j);
  return m;
}

}  // namespace distgeom
