#pragma once

// Independent reference computations used to freeze expected values. None of
// these go through the recurrence engine, the linearization cache or the
// moment machinery they are compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// Monomial coefficients of the Chebyshev polynomial T_n from the explicit sum
// T_n(x) = (n/2) sum_k (-1)^k (n-k-1)! / (k! (n-2k)!) (2x)^{n-2k}.
inline std::vector<double> chebyshev_monomial(unsigned n) {
  std::vector<double> c(n + 1, 0.0);
  if (n == 0) {
    c[0] = 1.0;
    return c;
  }
  auto fact = [](unsigned m) {
    double f = 1.0;
    for (unsigned i = 2; i <= m; ++i) f *= i;
    return f;
  };
  for (unsigned k = 0; 2 * k <= n; ++k) {
    const double term = (k % 2 ? -1.0 : 1.0) * fact(n - k - 1) / (fact(k) * fact(n - 2 * k)) *
                        std::pow(2.0, static_cast<double>(n - 2 * k)) * n / 2.0;
    c[n - 2 * k] += term;
  }
  return c;
}

inline std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Expands a monomial-basis polynomial in the Chebyshev basis by peeling off
// leading terms.
inline std::vector<double> to_chebyshev_basis(std::vector<double> p) {
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t l = p.size(); l-- > 0;) {
    const auto t = chebyshev_monomial(static_cast<unsigned>(l));
    const double coef = p[l] / t[l];
    out[l] = coef;
    for (std::size_t i = 0; i <= l; ++i) p[i] -= coef * t[i];
  }
  return out;
}

// T_n(z) = ((z + w)^n + (z - w)^n) / 2 with w = sqrt(z^2 - 1).
inline Complex chebyshev_closed_form(unsigned n, Complex z) {
  const Complex w = std::sqrt(z * z - 1.0);
  return (std::pow(z + w, static_cast<double>(n)) + std::pow(z - w, static_cast<double>(n))) / 2.0;
}

// k-th derivative of T_n at z from the explicit monomial coefficients.
inline Complex chebyshev_derivative(unsigned n, unsigned k, Complex z) {
  const auto c = chebyshev_monomial(n);
  Complex acc{};
  for (std::size_t i = k; i < c.size(); ++i) {
    double falling = 1.0;
    for (unsigned j = 0; j < k; ++j) falling *= static_cast<double>(i - j);
    Complex power = 1.0;
    for (std::size_t j = k; j < i; ++j) power *= z;
    acc += c[i] * falling * power;
  }
  return acc;
}

inline std::uint64_t pascal(unsigned n, unsigned k) {
  std::vector<std::vector<std::uint64_t>> row(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    row[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) row[i][j] = row[i - 1][j - 1] + row[i - 1][j];
  }
  return row[n][k];
}

// Roots of t^2 = theta + (1 - theta) t: the only values an exponential of
// D(theta) can take at 1.
inline std::pair<double, double> dtheta_exponential_values(double theta) {
  const double b = -(1.0 - theta);
  const double c = -theta;
  const double disc = std::sqrt(b * b - 4.0 * c);
  return {(-b + disc) / 2.0, (-b - disc) / 2.0};
}

}  // namespace oracle
