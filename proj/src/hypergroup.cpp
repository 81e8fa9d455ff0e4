#include "hyperderiv/hypergroup.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {
namespace {

PointMeasure canonical(std::vector<std::pair<Point, double>> atoms) {
  std::map<Point, double> merged;
  for (const auto& [p, w] : atoms) merged[p] += w;
  PointMeasure out;
  for (const auto& [p, w] : merged) {
    if (w != 0.0) out.emplace_back(p, w);
  }
  return out;
}

std::string pair_name(const Point& x, const Point& y) {
  return "(" + x.to_string() + ", " + y.to_string() + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteHypergroup

FiniteHypergroup::FiniteHypergroup(std::size_t size, std::size_t identity,
                                   std::vector<Entry> entries, std::string name)
    : size_(size), identity_(identity), name_(std::move(name)) {
  if (size == 0) throw DomainError("finite hypergroup must have at least one point");
  if (identity >= size) throw DomainError("identity index out of range");
  std::vector<bool> seen(size * size, false);
  table_.resize(size * size);
  for (auto& e : entries) {
    if (e.left >= size || e.right >= size) {
      throw DomainError("table entry (" + std::to_string(e.left) + ", " +
                        std::to_string(e.right) + ") outside the carrier");
    }
    for (const auto& [k, w] : e.weights) {
      if (!k.is_index() || k.as_index() >= size) {
        throw DomainError("table entry (" + std::to_string(e.left) + ", " +
                          std::to_string(e.right) + ") has support point outside the carrier");
      }
      if (!std::isfinite(w)) throw DomainError("table weights must be finite");
    }
    const std::size_t slot = e.left * size + e.right;
    if (seen[slot]) {
      throw DomainError("duplicate table entry (" + std::to_string(e.left) + ", " +
                        std::to_string(e.right) + ")");
    }
    seen[slot] = true;
    table_[slot] = canonical(std::move(e.weights));
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const std::size_t slot = i * size + j;
      if (seen[slot]) continue;
      if (i == identity) {
        table_[slot] = {{Point::index(j), 1.0}};
      } else if (j == identity) {
        table_[slot] = {{Point::index(i), 1.0}};
      } else {
        throw DomainError("table entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is missing");
      }
    }
  }
}

const PointMeasure& FiniteHypergroup::product(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_) throw DomainError("index outside the finite carrier");
  return table_[i * size_ + j];
}

FiniteHypergroup dtheta_hypergroup(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw DomainError("D(theta) requires 0 < theta <= 1");
  }
  std::ostringstream name;
  name << "dtheta:" << theta;
  return FiniteHypergroup(
      2, 0, {{1, 1, {{Point::index(0), theta}, {Point::index(1), 1.0 - theta}}}}, name.str());
}

// ---------------------------------------------------------------------------
// PolynomialHypergroup

PolynomialHypergroup::PolynomialHypergroup(double a0, double b0, Generator generator,
                                           std::optional<std::size_t> available, std::string name)
    : a0_(a0), b0_(b0), generator_(std::move(generator)), available_(available),
      name_(std::move(name)) {
  if (!(a0 > 0.0) || !std::isfinite(b0)) throw DomainError("polynomial hypergroup needs a0 > 0");
  if (std::abs(a0 + b0 - 1.0) > 1e-12) throw DomainError("polynomial hypergroup needs a0 + b0 = 1");
}

PolynomialHypergroup PolynomialHypergroup::chebyshev() {
  return PolynomialHypergroup(
      1.0, 0.0, [](std::size_t) { return RecurrenceCoefficients{0.5, 0.0, 0.5}; }, std::nullopt,
      "chebyshev");
}

PolynomialHypergroup PolynomialHypergroup::from_rows(double a0, double b0,
                                                     std::vector<RecurrenceCoefficients> rows,
                                                     std::string name) {
  const std::size_t n = rows.size();
  auto shared = std::make_shared<const std::vector<RecurrenceCoefficients>>(std::move(rows));
  return PolynomialHypergroup(
      a0, b0, [shared](std::size_t k) { return (*shared)[k - 1]; }, n, std::move(name));
}

RecurrenceCoefficients PolynomialHypergroup::coefficients(std::size_t n) const {
  if (n == 0) throw DomainError("recurrence rows start at n = 1");
  if (available_ && n > *available_) {
    throw DomainError("explicit coefficient list has " + std::to_string(*available_) +
                      " rows, row " + std::to_string(n) + " requested");
  }
  const auto r = generator_(n);
  if (!(r.a > 0.0) || !(r.c > 0.0) || !(r.b >= 0.0) || !std::isfinite(r.a + r.b + r.c)) {
    throw HypergroupError("recurrence row " + std::to_string(n) +
                          " needs a_n > 0, c_n > 0, b_n >= 0");
  }
  if (std::abs(r.a + r.b + r.c - 1.0) > 1e-12) {
    throw HypergroupError("recurrence row " + std::to_string(n) + " does not sum to 1");
  }
  return r;
}

PolynomialHypergroup::Vec PolynomialHypergroup::times_p1(const Vec& v) const {
  Vec out(v.size() + 1, 0.0);
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (v[l] == 0.0) continue;
    if (l == 0) {
      out[1] += v[0];
      continue;
    }
    const auto r = coefficients(l);
    out[l + 1] += r.a * v[l];
    out[l] += r.b * v[l];
    out[l - 1] += r.c * v[l];
  }
  return out;
}

const PolynomialHypergroup::Vec& PolynomialHypergroup::product_vector(std::size_t m,
                                                                      std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  auto& products = cache_->products;
  if (auto it = products.find({m, n}); it != products.end()) return it->second;

  // P_{k+1} P_n = (P_1 (P_k P_n) - b_k P_k P_n - c_k P_{k-1} P_n) / a_k
  auto get = [&](std::size_t k) -> const Vec& { return products.at({k, n}); };
  if (!products.count({0, n})) {
    Vec e(n + 1, 0.0);
    e[n] = 1.0;
    products.emplace(std::pair{std::size_t{0}, n}, std::move(e));
  }
  if (m >= 1 && !products.count({1, n})) {
    products.emplace(std::pair{std::size_t{1}, n}, times_p1(get(0)));
  }
  for (std::size_t k = 1; k < m; ++k) {
    if (products.count({k + 1, n})) continue;
    const auto r = coefficients(k);
    Vec next = times_p1(get(k));
    const Vec& cur = get(k);
    const Vec& prev = get(k - 1);
    for (std::size_t l = 0; l < cur.size(); ++l) next[l] -= r.b * cur[l];
    for (std::size_t l = 0; l < prev.size(); ++l) next[l] -= r.c * prev[l];
    for (auto& x : next) x /= r.a;
    products.emplace(std::pair{k + 1, n}, std::move(next));
  }
  return products.at({m, n});
}

std::vector<double> PolynomialHypergroup::linearization_unchecked(std::size_t m,
                                                                  std::size_t n) const {
  if (m > n) std::swap(m, n);
  return product_vector(m, n);
}

PolynomialHypergroup::Linearization PolynomialHypergroup::linearization(std::size_t m,
                                                                        std::size_t n) const {
  const auto raw = linearization_unchecked(m, n);
  double largest = 0.0;
  for (double c : raw) largest = std::max(largest, std::abs(c));
  // Cancellation leaves roundoff where the coefficient is structurally zero.
  const double noise = 1e-12 * largest;
  Linearization out;
  for (std::size_t l = 0; l < raw.size(); ++l) {
    if (raw[l] < -noise) {
      std::ostringstream os;
      os << "negative linearization coefficient c(" << m << ", " << n << ", " << l
         << ") = " << raw[l] << "; the recurrence does not define a hypergroup";
      throw HypergroupError(os.str());
    }
    if (raw[l] > noise) out.emplace_back(l, raw[l]);
  }
  return out;
}

std::vector<std::vector<Complex>> PolynomialHypergroup::derivative_table(std::size_t max_n,
                                                                         Complex z,
                                                                         std::size_t k) const {
  std::vector<std::vector<Complex>> rows(max_n + 1, std::vector<Complex>(k + 1));
  rows[0][0] = 1.0;
  if (max_n == 0) return rows;
  const Complex p1 = (z - b0_) / a0_;
  const double dp1 = 1.0 / a0_;
  rows[1][0] = p1;
  if (k >= 1) rows[1][1] = dp1;
  for (std::size_t n = 1; n < max_n; ++n) {
    const auto r = coefficients(n);
    for (std::size_t j = 0; j <= k; ++j) {
      // (P_1 P_n)^{(j)} = P_1 P_n^{(j)} + j P_1' P_n^{(j-1)}
      Complex prod = p1 * rows[n][j];
      if (j >= 1) prod += static_cast<double>(j) * dp1 * rows[n][j - 1];
      rows[n + 1][j] = (prod - r.b * rows[n][j] - r.c * rows[n - 1][j]) / r.a;
    }
  }
  return rows;
}

std::vector<Complex> PolynomialHypergroup::derivatives(std::size_t n, Complex z,
                                                       std::size_t k) const {
  return derivative_table(n, z, k)[n];
}

// ---------------------------------------------------------------------------
// Hypergroup

std::string Hypergroup::name() const {
  return std::visit([](const auto& h) { return std::string(h.name()); }, v_);
}

Point Hypergroup::identity() const {
  if (const auto* f = finite()) return Point::index(f->identity());
  if (polynomial()) return Point::index(0);
  return Point::real(0.0);
}

bool Hypergroup::contains(const Point& p) const {
  if (const auto* f = finite()) return p.is_index() && p.as_index() < f->size();
  if (polynomial()) return p.is_index();
  return p.is_real();
}

void Hypergroup::require(const Point& p) const {
  if (!contains(p)) {
    throw DomainError("point " + p.to_string() + " is not in the carrier of " + name());
  }
}

std::vector<Point> Hypergroup::points() const {
  const auto* f = finite();
  if (!f) throw DomainError("carrier of " + name() + " is infinite");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < f->size(); ++i) pts.push_back(Point::index(i));
  return pts;
}

PointMeasure convolve_points(const Hypergroup& h, const Point& x, const Point& y) {
  h.require(x);
  h.require(y);
  if (const auto* f = h.finite()) return f->product(x.as_index(), y.as_index());
  if (const auto* p = h.polynomial()) {
    PointMeasure out;
    for (const auto& [l, c] : p->linearization(x.as_index(), y.as_index())) {
      out.emplace_back(Point::index(l), c);
    }
    return out;
  }
  return {{Point::real(x.as_real() + y.as_real()), 1.0}};
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

using WeightMap = std::map<Point, double>;

double sup_distance(const WeightMap& a, const WeightMap& b) {
  double d = 0.0;
  for (const auto& [p, w] : a) {
    auto it = b.find(p);
    d = std::max(d, std::abs(w - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [p, w] : b) {
    if (!a.count(p)) d = std::max(d, std::abs(w));
  }
  return d;
}

WeightMap to_map(const PointMeasure& m) { return WeightMap(m.begin(), m.end()); }

// Point product with raw (unchecked) coefficients, so that a defective
// recurrence is reported instead of thrown.
PointMeasure raw_product(const Hypergroup& h, const Point& x, const Point& y) {
  if (const auto* p = h.polynomial()) {
    const auto raw = p->linearization_unchecked(x.as_index(), y.as_index());
    PointMeasure out;
    for (std::size_t l = 0; l < raw.size(); ++l) {
      if (raw[l] != 0.0) out.emplace_back(Point::index(l), raw[l]);
    }
    return out;
  }
  return convolve_points(h, x, y);
}

WeightMap times_point(const Hypergroup& h, const WeightMap& m, const Point& z, bool left) {
  WeightMap out;
  for (const auto& [p, w] : m) {
    for (const auto& [q, v] : left ? raw_product(h, z, p) : raw_product(h, p, z)) {
      out[q] += w * v;
    }
  }
  return out;
}

std::vector<Point> axiom_points(const Hypergroup& h, std::size_t bound) {
  if (h.finite()) return h.points();
  std::vector<Point> pts;
  if (h.polynomial()) {
    for (std::size_t n = 0; n <= bound; ++n) pts.push_back(Point::index(n));
  } else {
    const long b = static_cast<long>(bound);
    for (long k = -2 * b; k <= 2 * b; ++k) pts.push_back(Point::real(0.5 * static_cast<double>(k)));
  }
  return pts;
}

}  // namespace

Report check_axioms(const Hypergroup& h, std::size_t sample_bound, Tolerance tol) {
  Report report;
  report.title = "axioms of " + h.name();
  if (sample_bound < 1) throw DomainError("sample bound must be at least 1");
  const auto pts = axiom_points(h, sample_bound);
  const Point o = h.identity();

  CheckBuilder nonneg("nonnegativity", "point products are positive measures", tol.relative);
  CheckBuilder norm("normalization", "point products have total mass 1", tol.relative);
  CheckBuilder ident("identity", "delta_o is a two-sided unit", tol.relative);
  CheckBuilder comm("commutativity", "delta_x * delta_y = delta_y * delta_x", tol.relative);
  CheckBuilder assoc("associativity", "(delta_x * delta_y) * delta_z = delta_x * (delta_y * delta_z)",
                     tol.relative);

  for (const auto& x : pts) {
    const WeightMap dx{{x, 1.0}};
    ident.observe(tol.normalized(sup_distance(to_map(raw_product(h, o, x)), dx), 1.0),
                  "delta_o * delta_" + x.to_string());
    ident.observe(tol.normalized(sup_distance(to_map(raw_product(h, x, o)), dx), 1.0),
                  "delta_" + x.to_string() + " * delta_o");
    for (const auto& y : pts) {
      const auto xy = raw_product(h, x, y);
      double total = 0.0;
      double most_negative = 0.0;
      for (const auto& [p, w] : xy) {
        total += w;
        most_negative = std::min(most_negative, w);
      }
      nonneg.observe(tol.normalized(-most_negative, 1.0), "row " + pair_name(x, y));
      norm.observe(tol.normalized(std::abs(total - 1.0), 1.0), "row " + pair_name(x, y));
      comm.observe(tol.normalized(sup_distance(to_map(xy), to_map(raw_product(h, y, x))), 1.0),
                   pair_name(x, y));
      for (const auto& z : pts) {
        const auto left = times_point(h, to_map(xy), z, false);
        const auto right = times_point(h, to_map(raw_product(h, y, z)), x, true);
        assoc.observe(tol.normalized(sup_distance(left, right), 1.0),
                      "(" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() + ")");
      }
    }
  }
  for (auto* b : {&nonneg, &norm, &ident, &comm, &assoc}) report.add(b->finish());
  return report;
}

// ---------------------------------------------------------------------------
// Exponentials

std::vector<CFunction> enumerate_exponentials(const Hypergroup& h, Tolerance tol) {
  const auto* f = h.finite();
  if (!f) throw DomainError("exponentials can only be enumerated on finite hypergroups");
  const std::size_t s = f->size();
  const std::size_t o = f->identity();

  // T_x[j, k] = weight of delta_k in delta_x * delta_j; an exponential m is
  // a joint eigenvector with T_x m = m(x) m.
  std::vector<Eigen::MatrixXd> translations(s, Eigen::MatrixXd::Zero(s, s));
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t j = 0; j < s; ++j) {
      for (const auto& [k, w] : f->product(x, j)) translations[x](j, k.as_index()) = w;
    }
  }

  std::mt19937_64 rng(0x6d6f6d656e7473ULL);
  std::uniform_real_distribution<double> coef(0.5, 1.5);
  Eigen::MatrixXcd vectors;
  bool separated = false;
  for (int attempt = 0; attempt < 8 && !separated; ++attempt) {
    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(s, s);
    for (std::size_t x = 0; x < s; ++x) {
      if (x != o) combo += coef(rng) * translations[x];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(combo);
    if (solver.info() != Eigen::Success) continue;
    const Eigen::VectorXcd values = solver.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    separated = true;
    for (std::size_t i = 0; i < s && separated; ++i) {
      for (std::size_t j = i + 1; j < s; ++j) {
        if (std::abs(values(i) - values(j)) <= 1e-8 * scale) {
          separated = false;
          break;
        }
      }
    }
    if (separated) vectors = solver.eigenvectors();
  }
  if (!separated) {
    throw HypergroupError(
        "translation matrices have no joint eigenbasis with one-dimensional joint eigenspaces; "
        "the translation algebra is degenerate or not semisimple");
  }

  std::vector<std::vector<Complex>> found;
  for (std::size_t i = 0; i < s; ++i) {
    Eigen::VectorXcd v = vectors.col(static_cast<Eigen::Index>(i));
    if (std::abs(v(o)) <= 1e-12 * v.cwiseAbs().maxCoeff()) {
      throw HypergroupError("joint eigenvector vanishes at the identity");
    }
    v /= v(o);
    std::vector<Complex> m(s);
    for (std::size_t k = 0; k < s; ++k) {
      Complex c = v(static_cast<Eigen::Index>(k));
      if (std::abs(c.imag()) <= 1e-13 * std::max(1.0, std::abs(c))) c = {c.real(), 0.0};
      m[k] = c;
    }
    m[o] = 1.0;
    for (std::size_t x = 0; x < s; ++x) {
      for (std::size_t y = 0; y < s; ++y) {
        Complex lhs{};
        for (const auto& [k, w] : f->product(x, y)) lhs += w * m[k.as_index()];
        const Complex rhs = m[x] * m[y];
        if (!tol.accepts(std::abs(lhs - rhs), std::max({1.0, std::abs(lhs), std::abs(rhs)}))) {
          throw HypergroupError("joint eigenvector fails the exponential equation at (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
        }
      }
    }
    found.push_back(std::move(m));
  }

  auto key = [](Complex c) { return std::pair{std::round(c.real() * 1e9), std::round(c.imag() * 1e9)}; };
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (key(a[k]) != key(b[k])) return key(a[k]) > key(b[k]);
    }
    return false;
  });

  std::vector<CFunction> out;
  for (const auto& m : found) {
    std::map<Point, Complex> table;
    for (std::size_t k = 0; k < s; ++k) table.emplace(Point::index(k), m[k]);
    out.push_back(CFunction::table(std::move(table)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builtin functions

CFunction polynomial_exponential(HypergroupPtr h, Complex z) {
  return polynomial_derivative_function(std::move(h), 0, z);
}

CFunction polynomial_derivative_function(HypergroupPtr h, std::size_t k, Complex z) {
  if (!h || !h->polynomial()) throw DomainError("polynomial derivative needs a polynomial hypergroup");
  std::ostringstream os;
  os << "P_n^(" << k << ")(" << z << ")";
  return CFunction::builtin(os.str(), [h, k, z](const Point& p) {
    return h->polynomial()->derivatives(p.as_index(), z, k)[k];
  });
}

CFunction realline_exponential(Complex lambda) { return realline_moment_function(0, lambda); }

CFunction realline_moment_function(std::size_t k, Complex lambda) {
  std::ostringstream os;
  os << "x^" << k << " exp(" << lambda << " x)";
  return CFunction::builtin(os.str(), [k, lambda](const Point& p) {
    const double x = p.as_real();
    return std::pow(x, static_cast<double>(k)) * std::exp(lambda * x);
  });
}

}  // namespace hyperderiv
