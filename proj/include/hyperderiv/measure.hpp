#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperderiv/function.hpp"
#include "hyperderiv/hypergroup.hpp"
#include "hyperderiv/tolerance.hpp"

namespace hyperderiv {

/// Finitely supported complex measure on a hypergroup.
///
/// The support is kept canonical: sorted by point, no repeated points and
/// no weights that are exactly zero. Two measures on the same hypergroup
/// are equal iff their canonical supports are equal.
class Measure {
 public:
  using Atom = std::pair<Point, Complex>;

  /// Merges repeated points and drops exact zeros. Throws DomainError for
  /// points outside the carrier or non-finite weights.
  Measure(HypergroupPtr h, std::vector<Atom> atoms);
  static Measure zero(HypergroupPtr h) { return Measure(std::move(h), {}); }
  static Measure point_mass(HypergroupPtr h, const Point& x, Complex w = 1.0);

  const HypergroupPtr& hypergroup() const { return h_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  /// Weight at x, zero off the support.
  Complex weight(const Point& x) const;
  Complex total_mass() const;
  double max_abs_weight() const;

  /// Drops weights with |w| <= threshold. Opt-in; nothing prunes by default.
  Measure pruned(double threshold) const;

  Measure operator+(const Measure& other) const;
  Measure operator-(const Measure& other) const;
  Measure operator*(Complex c) const;
  friend Measure operator*(Complex c, const Measure& m) { return m * c; }

  friend bool operator==(const Measure& a, const Measure& b);

  std::string to_string() const;

 private:
  Measure(HypergroupPtr h, std::vector<Atom> sorted, bool) : h_(std::move(h)), atoms_(std::move(sorted)) {}
  void require_same(const Measure& other) const;

  HypergroupPtr h_;
  std::vector<Atom> atoms_;
};

/// Sup-norm distance over the union of supports.
double distance(const Measure& a, const Measure& b);

/// Integral of f against mu. EvaluationError from f propagates with the
/// offending point.
Complex pair(const Measure& mu, const CFunction& f);

/// Bilinear extension of the point-mass convolution. Throws DomainError
/// for measures on different hypergroups.
Measure convolve(const Measure& mu, const Measure& nu);

/// (phi mu)({x}) = phi(x) mu({x}).
Measure module_action(const CFunction& phi, const Measure& mu);

}  // namespace hyperderiv
