#include "hyperderiv/point.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {

Point Point::real(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("real carrier point must be finite");
  }
  return Point(x == 0.0 ? 0.0 : x);
}

std::size_t Point::as_index() const {
  if (const auto* i = std::get_if<Index>(&value_)) return i->value;
  throw DomainError("expected an index point, got " + to_string());
}

double Point::as_real() const {
  if (const auto* x = std::get_if<double>(&value_)) return *x;
  throw DomainError("expected a real point, got " + to_string());
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
  if (a.is_index()) return a.as_index() <=> b.as_index();
  // Finite and zero-folded, so the partial order is total here.
  const double x = a.as_real();
  const double y = b.as_real();
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  if (p.is_index()) return os << p.as_index();
  std::ostringstream tmp;
  tmp.precision(17);
  tmp << p.as_real();
  return os << tmp.str();
}

}  // namespace hyperderiv

std::size_t std::hash<hyperderiv::Point>::operator()(const hyperderiv::Point& p) const noexcept {
  if (p.is_index()) return std::hash<std::size_t>{}(p.as_index());
  return std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(p.as_real())) ^ 0x9e3779b97f4a7c15ULL;
}
