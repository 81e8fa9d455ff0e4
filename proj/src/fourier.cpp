#include "hyperderiv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

Complex Poly::operator()(Complex z) const {
  Complex acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative(std::size_t k) const {
  if (k >= c_.size()) return Poly();
  std::vector<Complex> out(c_.size() - k);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double falling = 1.0;
    for (std::size_t j = 0; j < k; ++j) falling *= static_cast<double>(i + k - j);
    out[i] = falling * c_[i + k];
  }
  return Poly(std::move(out));
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Complex> out(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Complex(-1.0); }

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly();
  std::vector<Complex> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return Poly(std::move(out));
}

Poly Poly::operator*(Complex s) const {
  std::vector<Complex> out(c_);
  for (auto& c : out) c *= s;
  return Poly(std::move(out));
}

namespace {

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Complex c = c_[i];
    if (c == Complex{}) continue;
    std::string mag;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = c.real() < 0.0;
      const double a = std::abs(c.real());
      if (a != 1.0 || i == 0) mag = format_real(a);
    } else {
      mag = "(" + format_real(c.real()) + (c.imag() < 0 ? " - " : " + ") +
            format_real(std::abs(c.imag())) + "i)";
    }
    std::string power = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (out.empty()) {
      out = (negative ? "-" : "") + mag + power;
    } else {
      out += (negative ? " - " : " + ") + mag + power;
    }
  }
  return out;
}

double distance(const Poly& a, const Poly& b) { return (a - b).max_abs_coeff(); }

// ---------------------------------------------------------------------------
// Transform

namespace {

const PolynomialHypergroup& require_polynomial(const HypergroupPtr& h) {
  if (!h || !h->polynomial()) {
    throw DomainError("the polynomial transform needs a polynomial hypergroup; use "
                      "TransformEval on the real line");
  }
  return *h->polynomial();
}

// Monomial coefficients of P_0 .. P_max.
std::vector<std::vector<double>> monomial_table(const PolynomialHypergroup& h, std::size_t max_n) {
  std::vector<std::vector<double>> rows(max_n + 1);
  rows[0] = {1.0};
  if (max_n == 0) return rows;
  const std::vector<double> p1 = {-h.b0() / h.a0(), 1.0 / h.a0()};
  rows[1] = p1;
  for (std::size_t n = 1; n < max_n; ++n) {
    const auto r = h.coefficients(n);
    std::vector<double> next(n + 2, 0.0);
    for (std::size_t i = 0; i < rows[n].size(); ++i) {
      next[i] += p1[0] * rows[n][i];
      next[i + 1] += p1[1] * rows[n][i];
      next[i] -= r.b * rows[n][i];
    }
    for (std::size_t i = 0; i < rows[n - 1].size(); ++i) next[i] -= r.c * rows[n - 1][i];
    for (auto& x : next) x /= r.a;
    rows[n + 1] = std::move(next);
  }
  return rows;
}

std::size_t max_index(const Measure& mu) {
  std::size_t m = 0;
  for (const auto& [p, w] : mu.atoms()) m = std::max(m, p.as_index());
  return m;
}

}  // namespace

Poly p_to_monomial(const PolynomialHypergroup& h, std::size_t n) {
  const auto rows = monomial_table(h, n);
  return Poly(std::vector<Complex>(rows[n].begin(), rows[n].end()));
}

TransformPoly transform(const Measure& mu) {
  const auto& h = require_polynomial(mu.hypergroup());
  if (mu.empty()) return {Poly(), mu.hypergroup()};
  const auto rows = monomial_table(h, max_index(mu));
  std::vector<Complex> out(max_index(mu) + 1);
  for (const auto& [p, w] : mu.atoms()) {
    const auto& row = rows[p.as_index()];
    for (std::size_t i = 0; i < row.size(); ++i) out[i] += w * row[i];
  }
  return {Poly(std::move(out)), mu.hypergroup()};
}

TransformEval::TransformEval(Measure mu) : mu_(std::move(mu)) {
  if (!mu_.hypergroup()->is_realline()) {
    throw DomainError("TransformEval is defined for measures on the real line");
  }
}

Complex TransformEval::operator()(Complex lambda) const { return derivative(lambda, 0); }

Complex TransformEval::derivative(Complex lambda, std::size_t k) const {
  Complex acc{};
  for (const auto& [p, w] : mu_.atoms()) {
    const double x = p.as_real();
    acc += w * std::pow(x, static_cast<double>(k)) * std::exp(lambda * x);
  }
  return acc;
}

Report verify_transform_multiplicativity(const Measure& mu, const Measure& nu, Tolerance tol) {
  require_polynomial(mu.hypergroup());
  Report report;
  report.title = "transform multiplicativity";
  CheckBuilder check("transform multiplicativity", "(mu * nu)^ = mu^ nu^", tol.relative);
  const Poly lhs = transform(convolve(mu, nu)).poly;
  const Poly rhs = transform(mu).poly * transform(nu).poly;
  const double scale = std::max({1.0, lhs.max_abs_coeff(), rhs.max_abs_coeff()});
  check.observe(tol.normalized(distance(lhs, rhs), scale),
                "lhs " + lhs.to_string() + " vs rhs " + rhs.to_string());
  report.add(check.finish());
  return report;
}

TransformPoly hat_derivation(const DerivationFamily& d, const Measure& mu,
                             const MultiIndex& alpha) {
  return transform(d.at(alpha)(mu));
}

Report verify_fourier_leibniz(const DerivationFamily& d, const std::vector<MeasurePair>& samples,
                              Tolerance tol) {
  require_polynomial(d.hypergroup());
  if (samples.empty()) throw PreconditionError("verify_fourier_leibniz needs sample pairs");
  Report report;
  report.title = "transferred derivation of rank " + std::to_string(d.rank()) + ", order " +
                 std::to_string(d.order());

  std::vector<std::map<MultiIndex, std::pair<Poly, Poly>>> hats(samples.size());
  std::vector<Measure> products;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [mu, nu] = samples[i];
    for (const auto& [beta, op] : d.entries()) {
      hats[i].emplace(beta, std::pair{transform(op(mu)).poly, transform(op(nu)).poly});
    }
    products.push_back(convolve(mu, nu));
  }

  for (const auto& alpha : indices_up_to(d.rank(), d.order())) {
    CheckBuilder check("fourier-leibniz[" + alpha.to_string() + "]",
                       "(D_a(mu * nu))^ = sum_{b <= a} binom(a, b) (D_b mu)^ (D_{a-b} nu)^",
                       tol.relative);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Poly lhs = hat_derivation(d, products[i], alpha).poly;
      Poly rhs;
      double scale = std::max(1.0, lhs.max_abs_coeff());
      for (const auto& beta : lower_indices(alpha)) {
        const Poly term = hats[i].at(beta).first * hats[i].at(alpha - beta).second *
                          Complex(static_cast<double>(multi_binomial(alpha, beta)));
        scale = std::max(scale, term.max_abs_coeff());
        rhs = rhs + term;
      }
      check.observe(tol.normalized(distance(lhs, rhs), scale), "sample " + std::to_string(i));
    }
    report.add(check.finish());
  }
  return report;
}

std::vector<Complex> derivative_moments(const Measure& mu, Complex z, std::size_t count) {
  const auto& h = require_polynomial(mu.hypergroup());
  std::vector<Complex> out(count);
  if (count == 0 || mu.empty()) return out;
  const auto table = h.derivative_table(max_index(mu), z, count - 1);
  for (const auto& [p, w] : mu.atoms()) {
    for (std::size_t k = 0; k < count; ++k) out[k] += w * table[p.as_index()][k];
  }
  return out;
}

Report fourier_derivative_identity(const Measure& mu, std::size_t k, Complex z, Tolerance tol) {
  const auto& h = require_polynomial(mu.hypergroup());
  Report report;
  std::ostringstream title;
  title << "derivative identity k = " << k << " at z = " << z;
  report.title = title.str();
  CheckBuilder check("derivative identity k=" + std::to_string(k),
                     "<D_k mu, 1> = (d/dz)^k mu^(z)", tol.relative);
  double scale = 1.0;
  if (!mu.empty()) {
    const auto table = h.derivative_table(max_index(mu), z, k);
    for (const auto& [p, w] : mu.atoms()) {
      scale = std::max(scale, std::abs(w * table[p.as_index()][k]));
    }
  }
  const Complex lhs = derivative_moments(mu, z, k + 1)[k];
  const Complex rhs = transform(mu).poly.derivative(k)(z);
  scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  std::ostringstream where;
  where.precision(15);
  where << "<D_k mu, 1> = " << lhs << ", transform derivative = " << rhs;
  check.observe(tol.normalized(std::abs(lhs - rhs), scale), where.str());
  report.add(check.finish());
  return report;
}

TaylorReconstruction taylor_reconstruct(HypergroupPtr h, const std::vector<Complex>& moment_values,
                                        std::size_t degree) {
  require_polynomial(h);
  const std::size_t terms = std::min(moment_values.size(), degree + 1);
  std::vector<Complex> coeffs(terms);
  double factorial = 1.0;
  for (std::size_t k = 0; k < terms; ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    coeffs[k] = moment_values[k] / factorial;
  }
  return {{Poly(std::move(coeffs)), std::move(h)}, moment_values.size() < degree + 1};
}

}  // namespace hyperderiv
