#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperderiv/function.hpp"
#include "hyperderiv/measure.hpp"
#include "hyperderiv/report.hpp"
#include "hyperderiv/tolerance.hpp"

namespace hyperderiv {

/// A map from measures to measures on one hypergroup.
///
/// Operators are compared extensionally on sample sets, never structurally.
class MeasureOperator {
 public:
  using Map = std::function<Measure(const Measure&)>;

  MeasureOperator(std::string name, Map map, bool module_hom_by_construction = false,
                  std::optional<CFunction> symbol = std::nullopt)
      : name_(std::move(name)),
        map_(std::move(map)),
        module_hom_(module_hom_by_construction),
        symbol_(std::move(symbol)) {}

  static MeasureOperator identity();
  static MeasureOperator zero();

  Measure operator()(const Measure& mu) const { return map_(mu); }

  const std::string& name() const { return name_; }
  /// True when the operator was built as multiplication by a function.
  bool module_hom_by_construction() const { return module_hom_; }
  /// The multiplier this operator was built from, if any.
  const std::optional<CFunction>& symbol() const { return symbol_; }

 private:
  std::string name_;
  Map map_;
  bool module_hom_;
  std::optional<CFunction> symbol_;
};

/// mu -> phi mu.
MeasureOperator make_module_hom(const CFunction& phi);

/// x -> <F(delta_x), 1>, tabulated at `points` on hypergroup `h`.
CFunction symbol_of(const MeasureOperator& f, const HypergroupPtr& h,
                    const std::vector<Point>& points);

using MeasureSample = std::pair<Measure, CFunction>;
using MeasurePair = std::pair<Measure, Measure>;
using PointPair = std::pair<Point, Point>;

/// Additivity, module homogeneity and agreement with multiplication by the
/// operator's own symbol, on the given samples.
Report is_module_hom(const MeasureOperator& f, const std::vector<MeasureSample>& samples,
                     Tolerance tol = default_tolerance());

/// f(o) = 1 and <delta_x * delta_y, f> = f(x) f(y) on the sampled pairs.
Report is_exponential(const Hypergroup& h, const CFunction& f,
                      const std::vector<PointPair>& samples,
                      Tolerance tol = default_tolerance());

/// F(mu * nu) = F(mu) * F(nu) on the sampled pairs, as measures
/// (`multiplicativity`) and after pairing with 1
/// (`multiplicativity total mass`). The zero operator passes and is flagged
/// in a separate `nonzero` check with a note.
///
/// Multiplication by an exponential always passes the total-mass form. It
/// passes the measure form on groups, but on a hypergroup only when the
/// exponential is constant on the support of every delta_x * delta_y.
Report is_multiplicative_hom(const MeasureOperator& f, const std::vector<MeasurePair>& samples,
                             Tolerance tol = default_tolerance());

/// Normalized residual of a measure identity lhs = rhs where rhs is the sum
/// of `terms`. The scale is max(1, largest weight in lhs or any term).
double identity_residual(const Measure& lhs, const Measure& rhs,
                         const std::vector<Measure>& terms, Tolerance tol);

}  // namespace hyperderiv
