#include "hyperderiv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {
namespace {

std::vector<Measure::Atom> canonical(std::map<Point, Complex> merged) {
  std::vector<Measure::Atom> out;
  out.reserve(merged.size());
  for (const auto& [p, w] : merged) {
    if (w != Complex{}) out.emplace_back(p, w);
  }
  return out;
}

}  // namespace

Measure::Measure(HypergroupPtr h, std::vector<Atom> atoms) : h_(std::move(h)) {
  if (!h_) throw DomainError("measure needs a hypergroup");
  std::map<Point, Complex> merged;
  for (const auto& [p, w] : atoms) {
    h_->require(p);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw DomainError("measure weight at " + p.to_string() + " is not finite");
    }
    merged[p] += w;
  }
  atoms_ = canonical(std::move(merged));
}

Measure Measure::point_mass(HypergroupPtr h, const Point& x, Complex w) {
  return Measure(std::move(h), {{x, w}});
}

Complex Measure::weight(const Point& x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, const Point& p) { return a.first < p; });
  return (it != atoms_.end() && it->first == x) ? it->second : Complex{};
}

Complex Measure::total_mass() const {
  Complex t{};
  for (const auto& [p, w] : atoms_) t += w;
  return t;
}

double Measure::max_abs_weight() const {
  double m = 0.0;
  for (const auto& [p, w] : atoms_) m = std::max(m, std::abs(w));
  return m;
}

Measure Measure::pruned(double threshold) const {
  std::vector<Atom> kept;
  for (const auto& a : atoms_) {
    if (std::abs(a.second) > threshold) kept.push_back(a);
  }
  return Measure(h_, std::move(kept), true);
}

void Measure::require_same(const Measure& other) const {
  if (h_ != other.h_) {
    throw DomainError("measures live on different hypergroups (" + h_->name() + " vs " +
                      other.h_->name() + ")");
  }
}

Measure Measure::operator+(const Measure& other) const {
  require_same(other);
  std::map<Point, Complex> merged(atoms_.begin(), atoms_.end());
  for (const auto& [p, w] : other.atoms_) merged[p] += w;
  return Measure(h_, canonical(std::move(merged)), true);
}

Measure Measure::operator-(const Measure& other) const { return *this + other * Complex{-1.0}; }

Measure Measure::operator*(Complex c) const {
  std::vector<Atom> out;
  for (const auto& [p, w] : atoms_) {
    const Complex v = c * w;
    if (v != Complex{}) out.emplace_back(p, v);
  }
  return Measure(h_, std::move(out), true);
}

bool operator==(const Measure& a, const Measure& b) {
  return a.h_ == b.h_ && a.atoms_ == b.atoms_;
}

std::string Measure::to_string() const {
  if (atoms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) os << " + ";
    os << atoms_[i].second << " delta_" << atoms_[i].first;
  }
  return os.str();
}

double distance(const Measure& a, const Measure& b) {
  double d = 0.0;
  auto ia = a.atoms().begin();
  auto ib = b.atoms().begin();
  while (ia != a.atoms().end() || ib != b.atoms().end()) {
    if (ib == b.atoms().end() || (ia != a.atoms().end() && ia->first < ib->first)) {
      d = std::max(d, std::abs(ia->second));
      ++ia;
    } else if (ia == a.atoms().end() || ib->first < ia->first) {
      d = std::max(d, std::abs(ib->second));
      ++ib;
    } else {
      d = std::max(d, std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return d;
}

Complex pair(const Measure& mu, const CFunction& f) {
  Complex acc{};
  for (const auto& [p, w] : mu.atoms()) acc += f(p) * w;
  return acc;
}

Measure convolve(const Measure& mu, const Measure& nu) {
  if (mu.hypergroup() != nu.hypergroup()) {
    throw DomainError("cannot convolve measures on different hypergroups");
  }
  const auto& h = *mu.hypergroup();
  std::map<Point, Complex> merged;
  for (const auto& [x, wx] : mu.atoms()) {
    for (const auto& [y, wy] : nu.atoms()) {
      const Complex w = wx * wy;
      for (const auto& [z, c] : convolve_points(h, x, y)) merged[z] += w * c;
    }
  }
  std::vector<Measure::Atom> atoms(merged.begin(), merged.end());
  return Measure(mu.hypergroup(), std::move(atoms));
}

Measure module_action(const CFunction& phi, const Measure& mu) {
  std::vector<Measure::Atom> out;
  out.reserve(mu.atoms().size());
  for (const auto& [p, w] : mu.atoms()) out.emplace_back(p, phi(p) * w);
  return Measure(mu.hypergroup(), std::move(out));
}

}  // namespace hyperderiv
