#include "hyperderiv/sampling.hpp"

#include <cmath>
#include <set>

namespace hyperderiv {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Complex Sampler::complex_in_disk(double radius) {
  while (true) {
    const double re = uniform(-radius, radius);
    const double im = uniform(-radius, radius);
    if (re * re + im * im <= radius * radius) return {re, im};
  }
}

double Sampler::dyadic(double bound) {
  const long steps = static_cast<long>(std::floor(bound * 64.0));
  return static_cast<double>(std::uniform_int_distribution<long>(-steps, steps)(rng_)) / 64.0;
}

std::size_t Sampler::index(std::size_t upper_inclusive) {
  return std::uniform_int_distribution<std::size_t>(0, upper_inclusive)(rng_);
}

Point Sampler::point(const Hypergroup& h, std::size_t bound) {
  if (const auto* f = h.finite()) return Point::index(index(f->size() - 1));
  if (h.polynomial()) return Point::index(index(bound));
  return Point::real(dyadic(static_cast<double>(bound)));
}

std::vector<PointPair> Sampler::point_pairs(const Hypergroup& h, std::size_t count,
                                            std::size_t bound) {
  std::vector<PointPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point x = point(h, bound);
    Point y = point(h, bound);
    out.emplace_back(x, y);
  }
  return out;
}

Measure Sampler::measure(const HypergroupPtr& h, std::size_t support, std::size_t bound) {
  std::set<Point> chosen;
  std::size_t capacity = support;
  if (const auto* f = h->finite()) capacity = std::min(support, f->size());
  if (h->polynomial()) capacity = std::min(support, bound + 1);
  while (chosen.size() < capacity) chosen.insert(point(*h, bound));
  std::vector<Measure::Atom> atoms;
  for (const auto& p : chosen) atoms.emplace_back(p, complex_in_disk(1.0));
  return Measure(h, std::move(atoms));
}

std::vector<MeasurePair> Sampler::measure_pairs(const HypergroupPtr& h, std::size_t count,
                                                std::size_t support, std::size_t bound) {
  std::vector<MeasurePair> out;
  for (std::size_t i = 0; i < count; ++i) {
    Measure mu = measure(h, support, bound);
    Measure nu = measure(h, support, bound);
    out.emplace_back(std::move(mu), std::move(nu));
  }
  return out;
}

CFunction Sampler::random_table(const std::vector<Point>& points) {
  std::map<Point, Complex> values;
  for (const auto& p : points) values.emplace(p, complex_in_disk(1.0));
  return CFunction::table(std::move(values));
}

std::vector<PointPair> all_pairs(const Hypergroup& h, std::size_t bound) {
  std::vector<Point> pts;
  if (h.finite()) {
    pts = h.points();
  } else if (h.polynomial()) {
    for (std::size_t n = 0; n <= bound; ++n) pts.push_back(Point::index(n));
  } else {
    const long b = static_cast<long>(bound);
    for (long k = -b; k <= b; ++k) pts.push_back(Point::real(static_cast<double>(k)));
  }
  std::vector<PointPair> out;
  for (const auto& x : pts) {
    for (const auto& y : pts) out.emplace_back(x, y);
  }
  return out;
}

std::vector<PointPair> default_pairs(const Hypergroup& h) {
  if (h.is_realline()) {
    std::vector<PointPair> out;
    const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    for (double x : grid) {
      for (double y : grid) out.emplace_back(Point::real(x), Point::real(y));
    }
    return out;
  }
  return all_pairs(h, 3);
}

}  // namespace hyperderiv
