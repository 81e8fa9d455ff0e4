#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hyperderiv/function.hpp"
#include "hyperderiv/measure.hpp"
#include "hyperderiv/operator.hpp"

namespace hyperderiv {

/// Seeded source of sample points, pairs and measures. Identical seeds give
/// identical samples on the same platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  Complex complex_in_disk(double radius);
  /// Dyadic reals k/64 in [-bound, bound], so that sums stay exact.
  double dyadic(double bound);
  std::size_t index(std::size_t upper_inclusive);

  /// A random carrier point: any index for finite carriers, 0..bound for
  /// polynomial hypergroups, a dyadic real in [-bound, bound] otherwise.
  Point point(const Hypergroup& h, std::size_t bound);
  std::vector<PointPair> point_pairs(const Hypergroup& h, std::size_t count, std::size_t bound);
  /// Measure with `support` distinct atoms and complex weights.
  Measure measure(const HypergroupPtr& h, std::size_t support, std::size_t bound);
  std::vector<MeasurePair> measure_pairs(const HypergroupPtr& h, std::size_t count,
                                         std::size_t support, std::size_t bound);
  /// Table of random complex values at the given points.
  CFunction random_table(const std::vector<Point>& points);

 private:
  std::mt19937_64 rng_;
};

/// Every ordered pair (m, n) with m, n <= bound, or every pair of a finite
/// carrier.
std::vector<PointPair> all_pairs(const Hypergroup& h, std::size_t bound);

/// Pairs used when no sample set is supplied: all pairs of a finite
/// carrier, (m, n) <= 3 on polynomial hypergroups, a small dyadic grid on
/// the real line.
std::vector<PointPair> default_pairs(const Hypergroup& h);

}  // namespace hyperderiv
