#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperderiv/hypergroup.hpp"
#include "hyperderiv/measure.hpp"
#include "hyperderiv/moments.hpp"
#include "hyperderiv/multi_index.hpp"
#include "hyperderiv/report.hpp"
#include "hyperderiv/tolerance.hpp"

namespace hyperderiv {

/// Polynomial with complex coefficients, lowest degree first. Trailing
/// exact zeros are trimmed; the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs);
  static Poly constant(Complex c) { return Poly({c}); }

  const std::vector<Complex>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Complex coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Complex{}; }

  Complex operator()(Complex z) const;
  Poly derivative(std::size_t k = 1) const;
  double max_abs_coeff() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex s) const;

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Human-readable form in the variable `var`, e.g. "2z^2 - 1".
  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Complex> c_;
};

/// Sup-norm distance between coefficient vectors.
double distance(const Poly& a, const Poly& b);

/// Fourier-Laplace transform of a measure on a polynomial hypergroup:
/// the polynomial z -> sum_n mu({n}) P_n(z) in monomial form.
struct TransformPoly {
  Poly poly;
  HypergroupPtr hypergroup;

  Complex operator()(Complex z) const { return poly(z); }
};

/// Monomial coefficients of P_n, obtained by running the recurrence on
/// polynomials.
Poly p_to_monomial(const PolynomialHypergroup& h, std::size_t n);

/// DomainError unless `mu` lives on a polynomial hypergroup.
TransformPoly transform(const Measure& mu);

/// lambda -> sum_x mu({x}) e^{lambda x} for measures on the real line.
class TransformEval {
 public:
  explicit TransformEval(Measure mu);
  Complex operator()(Complex lambda) const;
  /// k-th derivative in lambda: sum_x mu({x}) x^k e^{lambda x}.
  Complex derivative(Complex lambda, std::size_t k) const;

 private:
  Measure mu_;
};

/// Compares transform(mu * nu) with transform(mu) transform(nu).
Report verify_transform_multiplicativity(const Measure& mu, const Measure& nu,
                                         Tolerance tol = default_tolerance());

/// Transform of D_alpha(mu).
TransformPoly hat_derivation(const DerivationFamily& d, const Measure& mu,
                             const MultiIndex& alpha);

/// Leibniz rule for the transferred family on the transform side: one
/// check per alpha, named `fourier-leibniz[alpha]`.
Report verify_fourier_leibniz(const DerivationFamily& d, const std::vector<MeasurePair>& samples,
                              Tolerance tol = default_tolerance());

/// <D_k mu, 1> for the derivative family at z, k = 0..count-1, computed on
/// the measure side from P_n^{(k)}(z).
std::vector<Complex> derivative_moments(const Measure& mu, Complex z, std::size_t count);

/// Compares <D_k mu, 1> with the k-th derivative of the transform at z.
Report fourier_derivative_identity(const Measure& mu, std::size_t k, Complex z,
                                   Tolerance tol = default_tolerance());

struct TaylorReconstruction {
  TransformPoly transform;
  /// Fewer values than `degree + 1` were supplied, so the sum is partial.
  bool truncated = false;
};

/// sum_k lambda^k / k! moment_values[k] for k <= degree. `degree` is the
/// largest support index of the source measure.
TaylorReconstruction taylor_reconstruct(HypergroupPtr h, const std::vector<Complex>& moment_values,
                                        std::size_t degree);

}  // namespace hyperderiv
