#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hyperderiv/point.hpp"

namespace hyperderiv {

/// A complex-valued function on the carrier.
///
/// Values are immutable and cheap to copy. Evaluation is deterministic.
/// Each function records how it was built (its `kind` and a short
/// description) so reports can name it.
class CFunction {
 public:
  enum class Kind { table, constant, builtin, composite, custom };
  using Evaluator = std::function<Complex(const Point&)>;

  /// Table-backed function. Evaluation outside the table throws
  /// EvaluationError naming the point.
  static CFunction table(std::map<Point, Complex> values);
  static CFunction constant(Complex c);
  /// Named closed-form function; `description` is used in reports.
  static CFunction builtin(std::string description, Evaluator f);
  static CFunction custom(std::string description, Evaluator f);

  CFunction() : CFunction(constant(0.0)) {}

  Complex operator()(const Point& p) const { return eval_(p); }

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  /// Backing table for `Kind::table`, otherwise nullptr.
  const std::map<Point, Complex>* table_values() const { return table_.get(); }
  /// Constant value for `Kind::constant`.
  Complex constant_value() const { return constant_; }

  /// Tabulates the function at the given points.
  CFunction tabulate(const std::vector<Point>& points) const;

  friend CFunction operator+(const CFunction& f, const CFunction& g);
  friend CFunction operator*(const CFunction& f, const CFunction& g);
  friend CFunction operator*(Complex c, const CFunction& f);

  /// Same function except that `delta` is added at `at`.
  CFunction perturbed(const Point& at, Complex delta) const;

 private:
  CFunction(Kind kind, std::string description, Evaluator f)
      : kind_(kind), description_(std::move(description)), eval_(std::move(f)) {}

  Kind kind_ = Kind::constant;
  std::string description_;
  Evaluator eval_;
  std::shared_ptr<const std::map<Point, Complex>> table_;
  Complex constant_{0.0};
};

/// Polynomial in the point value: an index n or a real coordinate x.
CFunction polynomial_function(std::vector<Complex> coeffs);

}  // namespace hyperderiv
