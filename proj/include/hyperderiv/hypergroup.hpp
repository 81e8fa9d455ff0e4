#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperderiv/function.hpp"
#include "hyperderiv/point.hpp"
#include "hyperderiv/report.hpp"
#include "hyperderiv/tolerance.hpp"

namespace hyperderiv {

/// Probability measure with finite support, as produced by convolving
/// two point masses. Sorted by point, no duplicates, no exact zeros.
using PointMeasure = std::vector<std::pair<Point, double>>;

/// Finite commutative hypergroup given by its multiplication table.
///
/// The constructor validates only the shape of the table (indices in
/// range, finite weights); the hypergroup axioms are verified by
/// `check_axioms`, so defective tables can still be built and diagnosed.
class FiniteHypergroup {
 public:
  struct Entry {
    std::size_t left;
    std::size_t right;
    PointMeasure weights;
  };

  /// Entries not listed are taken from the identity axiom when one of the
  /// factors is the identity; any other missing pair is a DomainError.
  FiniteHypergroup(std::size_t size, std::size_t identity, std::vector<Entry> entries,
                   std::string name = "finite");

  std::size_t size() const { return size_; }
  std::size_t identity() const { return identity_; }
  const std::string& name() const { return name_; }
  const PointMeasure& product(std::size_t i, std::size_t j) const;

 private:
  std::size_t size_;
  std::size_t identity_;
  std::string name_;
  std::vector<PointMeasure> table_;  // row-major size x size
};

/// The two-point hypergroup D(theta) on {0, 1} with identity 0 and
/// delta_1 * delta_1 = theta delta_0 + (1 - theta) delta_1, 0 < theta <= 1.
FiniteHypergroup dtheta_hypergroup(double theta);

/// Recurrence coefficients (a_n, b_n, c_n) of
/// P_1 P_n = a_n P_{n+1} + b_n P_n + c_n P_{n-1}.
struct RecurrenceCoefficients {
  double a;
  double b;
  double c;
};

/// Hypergroup on the nonnegative integers generated by a normalized
/// orthogonal polynomial family with P_0 = 1 and P_1(x) = (x - b0) / a0.
///
/// Linearization coefficients are memoized per instance; the cache is
/// guarded by a mutex, and fills are idempotent.
class PolynomialHypergroup {
 public:
  using Generator = std::function<RecurrenceCoefficients(std::size_t)>;
  using Linearization = std::vector<std::pair<std::size_t, double>>;

  /// `generator` is called for n >= 1. When `available` is set, requesting
  /// coefficients beyond it is a DomainError.
  PolynomialHypergroup(double a0, double b0, Generator generator,
                       std::optional<std::size_t> available, std::string name);

  static PolynomialHypergroup chebyshev();
  /// Explicit coefficient rows for n = 1..rows.size().
  static PolynomialHypergroup from_rows(double a0, double b0,
                                        std::vector<RecurrenceCoefficients> rows,
                                        std::string name = "polynomial");

  double a0() const { return a0_; }
  double b0() const { return b0_; }
  const std::string& name() const { return name_; }
  std::optional<std::size_t> available() const { return available_; }

  /// Row n >= 1 of the recurrence; validates positivity and unit row sum.
  RecurrenceCoefficients coefficients(std::size_t n) const;

  /// Coefficients c(m, n, l) of P_m P_n = sum_l c(m, n, l) P_l, ascending
  /// in l. Throws HypergroupError when a coefficient is negative beyond
  /// tolerance, since the recurrence then does not define a hypergroup.
  Linearization linearization(std::size_t m, std::size_t n) const;
  /// Same coefficients with no pruning and no sign check, indexed by l.
  std::vector<double> linearization_unchecked(std::size_t m, std::size_t n) const;

  /// P_n^{(j)}(z) for j = 0..k.
  std::vector<Complex> derivatives(std::size_t n, Complex z, std::size_t k) const;
  /// Row n of the table holds P_n^{(j)}(z) for j = 0..k, for n = 0..max_n.
  std::vector<std::vector<Complex>> derivative_table(std::size_t max_n, Complex z,
                                                     std::size_t k) const;

 private:
  using Vec = std::vector<double>;
  const Vec& product_vector(std::size_t m, std::size_t n) const;  // requires m <= n
  Vec times_p1(const Vec& v) const;

  double a0_;
  double b0_;
  Generator generator_;
  std::optional<std::size_t> available_;
  std::string name_;

  struct Cache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, Vec> products;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// The additive group of real numbers.
struct RealLineGroup {
  std::string name() const { return "realline"; }
};

/// A commutative hypergroup of one of the supported families.
class Hypergroup {
 public:
  using Variant = std::variant<FiniteHypergroup, PolynomialHypergroup, RealLineGroup>;

  explicit Hypergroup(Variant v) : v_(std::move(v)) {}

  static std::shared_ptr<const Hypergroup> make(Variant v) {
    return std::make_shared<const Hypergroup>(std::move(v));
  }

  const Variant& variant() const { return v_; }
  const FiniteHypergroup* finite() const { return std::get_if<FiniteHypergroup>(&v_); }
  const PolynomialHypergroup* polynomial() const {
    return std::get_if<PolynomialHypergroup>(&v_);
  }
  bool is_realline() const { return std::holds_alternative<RealLineGroup>(v_); }

  std::string name() const;
  Point identity() const;
  bool contains(const Point& p) const;
  /// Throws DomainError naming the point when it is not in the carrier.
  void require(const Point& p) const;

  /// Carrier points for finite hypergroups; throws DomainError otherwise.
  std::vector<Point> points() const;

 private:
  Variant v_;
};

using HypergroupPtr = std::shared_ptr<const Hypergroup>;

/// delta_x * delta_y. Exactly commutative for polynomial hypergroups and
/// the real line; finite tables are used as given.
PointMeasure convolve_points(const Hypergroup& h, const Point& x, const Point& y);

/// Verifies nonnegativity, normalization, identity, commutativity and
/// associativity. Infinite carriers are sampled: indices 0..bound for
/// polynomial hypergroups, multiples of 1/2 in [-bound, bound] for the
/// real line.
Report check_axioms(const Hypergroup& h, std::size_t sample_bound,
                    Tolerance tol = default_tolerance());

/// All exponentials of a finite hypergroup, computed as joint eigenvectors
/// of the translation matrices and normalized to 1 at the identity. The
/// constant function comes first. Throws HypergroupError when the joint
/// spectrum is degenerate or a candidate fails the exponential equation.
std::vector<CFunction> enumerate_exponentials(const Hypergroup& h,
                                              Tolerance tol = default_tolerance());

/// n -> P_n(z) on a polynomial hypergroup.
CFunction polynomial_exponential(HypergroupPtr h, Complex z);
/// n -> P_n^{(k)}(z) on a polynomial hypergroup.
CFunction polynomial_derivative_function(HypergroupPtr h, std::size_t k, Complex z);
/// x -> e^{lambda x} on the real line.
CFunction realline_exponential(Complex lambda);
/// x -> x^k e^{lambda x} on the real line.
CFunction realline_moment_function(std::size_t k, Complex lambda);

}  // namespace hyperderiv
