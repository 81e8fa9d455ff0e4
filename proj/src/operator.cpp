#include "hyperderiv/operator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {

MeasureOperator MeasureOperator::identity() {
  return MeasureOperator("identity", [](const Measure& mu) { return mu; }, true,
                         CFunction::constant(1.0));
}

MeasureOperator MeasureOperator::zero() {
  return MeasureOperator("zero", [](const Measure& mu) { return Measure::zero(mu.hypergroup()); },
                         true, CFunction::constant(0.0));
}

MeasureOperator make_module_hom(const CFunction& phi) {
  return MeasureOperator("multiply by " + phi.description(),
                         [phi](const Measure& mu) { return module_action(phi, mu); }, true, phi);
}

CFunction symbol_of(const MeasureOperator& f, const HypergroupPtr& h,
                    const std::vector<Point>& points) {
  std::map<Point, Complex> values;
  for (const auto& x : points) values.emplace(x, f(Measure::point_mass(h, x)).total_mass());
  return CFunction::table(std::move(values));
}

double identity_residual(const Measure& lhs, const Measure& rhs,
                         const std::vector<Measure>& terms, Tolerance tol) {
  double scale = std::max(1.0, lhs.max_abs_weight());
  for (const auto& t : terms) scale = std::max(scale, t.max_abs_weight());
  return tol.normalized(distance(lhs, rhs), scale);
}

Report is_module_hom(const MeasureOperator& f, const std::vector<MeasureSample>& samples,
                     Tolerance tol) {
  if (samples.empty()) throw PreconditionError("is_module_hom needs at least one sample");
  Report report;
  report.title = "module homomorphism: " + f.name();
  CheckBuilder additive("additivity", "F(mu + nu) = F(mu) + F(nu)", tol.relative);
  CheckBuilder homogeneous("module homogeneity", "F(phi mu) = phi F(mu)", tol.relative);
  CheckBuilder symbol("symbol agreement", "F(mu) = phi_F mu with phi_F(x) = <F(delta_x), 1>",
                      tol.relative);

  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Measure& mu = samples[i].first;
    const Measure fmu = f(mu);
    for (std::size_t j = i; j < n; ++j) {
      const Measure& nu = samples[j].first;
      const Measure fnu = f(nu);
      const Measure lhs = f(mu + nu);
      const Measure rhs = fmu + fnu;
      additive.observe(identity_residual(lhs, rhs, {fmu, fnu}, tol),
                       "samples " + std::to_string(i) + ", " + std::to_string(j));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const CFunction& phi = samples[j].second;
      const std::string where =
          "measure " + std::to_string(i) + " with function " + std::to_string(j);
      try {
        const Measure lhs = f(module_action(phi, mu));
        const Measure rhs = module_action(phi, fmu);
        homogeneous.observe(identity_residual(lhs, rhs, {rhs}, tol), where);
      } catch (const EvaluationError& e) {
        homogeneous.error(where + ": " + e.what());
      }
    }
  }

  std::set<Point> support;
  for (const auto& s : samples) {
    for (const auto& [p, w] : s.first.atoms()) support.insert(p);
  }
  const auto& h = samples.front().first.hypergroup();
  const CFunction phi_f = symbol_of(f, h, {support.begin(), support.end()});
  for (std::size_t i = 0; i < n; ++i) {
    const Measure lhs = f(samples[i].first);
    const Measure rhs = module_action(phi_f, samples[i].first);
    symbol.observe(identity_residual(lhs, rhs, {rhs}, tol), "measure " + std::to_string(i));
  }

  report.add(additive.finish());
  report.add(homogeneous.finish());
  report.add(symbol.finish());
  return report;
}

Report is_exponential(const Hypergroup& h, const CFunction& f,
                      const std::vector<PointPair>& samples, Tolerance tol) {
  if (samples.empty()) throw PreconditionError("is_exponential needs at least one sample pair");
  Report report;
  report.title = "exponential: " + f.description();
  CheckBuilder unit("value at identity", "m(o) = 1", tol.relative);
  CheckBuilder product("exponential equation", "<delta_x * delta_y, m> = m(x) m(y)", tol.relative);
  try {
    unit.observe(tol.normalized(std::abs(f(h.identity()) - 1.0), 1.0),
                 "m(o) = " + std::to_string(std::abs(f(h.identity()))) + " in modulus");
  } catch (const EvaluationError& e) {
    unit.error(e.what());
  }
  for (const auto& [x, y] : samples) {
    const std::string where = "(" + x.to_string() + ", " + y.to_string() + ")";
    try {
      Complex lhs{};
      double scale = 1.0;
      for (const auto& [z, w] : convolve_points(h, x, y)) {
        const Complex term = w * f(z);
        lhs += term;
        scale = std::max(scale, std::abs(term));
      }
      const Complex rhs = f(x) * f(y);
      scale = std::max(scale, std::abs(rhs));
      product.observe(tol.normalized(std::abs(lhs - rhs), scale), where);
    } catch (const EvaluationError& e) {
      product.error(where + ": " + e.what());
    }
  }
  report.add(unit.finish());
  report.add(product.finish());
  return report;
}

Report is_multiplicative_hom(const MeasureOperator& f, const std::vector<MeasurePair>& samples,
                             Tolerance tol) {
  if (samples.empty()) {
    throw PreconditionError("is_multiplicative_hom needs at least one sample pair");
  }
  Report report;
  report.title = "multiplicative homomorphism: " + f.name();
  CheckBuilder mult("multiplicativity", "F(mu * nu) = F(mu) * F(nu)", tol.relative);
  CheckBuilder mass("multiplicativity total mass", "<F(mu * nu), 1> = <F(mu), 1> <F(nu), 1>",
                    tol.relative);
  bool vanishes = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [mu, nu] = samples[i];
    const Measure fmu = f(mu);
    const Measure fnu = f(nu);
    const Measure lhs = f(convolve(mu, nu));
    const Measure rhs = convolve(fmu, fnu);
    vanishes = vanishes && fmu.empty() && fnu.empty() && lhs.empty();
    mult.observe(identity_residual(lhs, rhs, {rhs}, tol), "sample " + std::to_string(i));
    const Complex l = lhs.total_mass();
    const Complex r = fmu.total_mass() * fnu.total_mass();
    mass.observe(tol.normalized(std::abs(l - r), std::max({1.0, std::abs(l), std::abs(r)})),
                 "sample " + std::to_string(i));
  }
  report.add(mult.finish());
  report.add(mass.finish());
  Check nonzero{"nonzero", "F is not the zero operator", Status::pass, 0.0, std::nullopt,
                std::nullopt};
  if (vanishes) {
    nonzero.note = "operator vanishes on every sample; the zero operator is multiplicative but "
                   "has no exponential symbol";
  }
  report.add(nonzero);
  return report;
}

}  // namespace hyperderiv
