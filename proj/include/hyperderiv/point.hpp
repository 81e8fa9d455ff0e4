#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>

namespace hyperderiv {

/// Complex scalar used for weights and function values.
using Complex = std::complex<double>;

/// A point of a discrete carrier (finite table or polynomial hypergroup).
struct Index {
  std::size_t value = 0;
  friend auto operator<=>(const Index&, const Index&) = default;
};

/// A point of the carrier: a discrete index or a real coordinate.
///
/// Real coordinates are compared exactly. Negative zero is folded into
/// positive zero at construction, so `==` on the stored double coincides
/// with bitwise equality. Non-finite coordinates are rejected.
class Point {
 public:
  Point() = default;
  static Point index(std::size_t n) { return Point(Index{n}); }
  static Point real(double x);

  bool is_index() const { return std::holds_alternative<Index>(value_); }
  bool is_real() const { return std::holds_alternative<double>(value_); }

  /// Throws DomainError if the point is not an index.
  std::size_t as_index() const;
  /// Throws DomainError if the point is not a real coordinate.
  double as_real() const;

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  explicit Point(Index i) : value_(i) {}
  explicit Point(double x) : value_(x) {}
  std::variant<Index, double> value_{Index{0}};
};

std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace hyperderiv

template <>
struct std::hash<hyperderiv::Point> {
  std::size_t operator()(const hyperderiv::Point& p) const noexcept;
};
