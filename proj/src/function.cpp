#include "hyperderiv/function.hpp"

#include <sstream>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {

CFunction CFunction::table(std::map<Point, Complex> values) {
  auto shared = std::make_shared<const std::map<Point, Complex>>(std::move(values));
  CFunction f(Kind::table, "table[" + std::to_string(shared->size()) + "]",
              [shared](const Point& p) -> Complex {
                auto it = shared->find(p);
                if (it == shared->end()) {
                  throw EvaluationError("table function is not defined at point " + p.to_string());
                }
                return it->second;
              });
  f.table_ = std::move(shared);
  return f;
}

CFunction CFunction::constant(Complex c) {
  std::ostringstream os;
  os << "constant" << c;
  CFunction f(Kind::constant, os.str(), [c](const Point&) { return c; });
  f.constant_ = c;
  return f;
}

CFunction CFunction::builtin(std::string description, Evaluator f) {
  return CFunction(Kind::builtin, std::move(description), std::move(f));
}

CFunction CFunction::custom(std::string description, Evaluator f) {
  return CFunction(Kind::custom, std::move(description), std::move(f));
}

CFunction CFunction::tabulate(const std::vector<Point>& points) const {
  std::map<Point, Complex> values;
  for (const auto& p : points) values.emplace(p, eval_(p));
  return table(std::move(values));
}

CFunction operator+(const CFunction& f, const CFunction& g) {
  return CFunction(CFunction::Kind::composite, "(" + f.description_ + " + " + g.description_ + ")",
                   [f, g](const Point& p) { return f(p) + g(p); });
}

CFunction operator*(const CFunction& f, const CFunction& g) {
  return CFunction(CFunction::Kind::composite, "(" + f.description_ + " * " + g.description_ + ")",
                   [f, g](const Point& p) { return f(p) * g(p); });
}

CFunction operator*(Complex c, const CFunction& f) {
  std::ostringstream os;
  os << c << " * " << f.description_;
  return CFunction(CFunction::Kind::composite, os.str(),
                   [c, f](const Point& p) { return c * f(p); });
}

CFunction CFunction::perturbed(const Point& at, Complex delta) const {
  std::ostringstream os;
  os << description_ << " perturbed at " << at << " by " << delta;
  auto base = *this;
  return CFunction(Kind::composite, os.str(), [base, at, delta](const Point& p) {
    return p == at ? base(p) + delta : base(p);
  });
}

CFunction polynomial_function(std::vector<Complex> coeffs) {
  std::ostringstream os;
  os << "polynomial[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? ", " : "") << coeffs[i];
  os << "]";
  return CFunction::builtin(os.str(), [coeffs = std::move(coeffs)](const Point& p) {
    const double x = p.is_index() ? static_cast<double>(p.as_index()) : p.as_real();
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  });
}

}  // namespace hyperderiv
