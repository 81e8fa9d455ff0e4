#include "hyperderiv/moments.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperderiv/errors.hpp"
#include "hyperderiv/sampling.hpp"

namespace hyperderiv {

// ---------------------------------------------------------------------------
// MomentSequence / DerivationFamily

MomentSequence::MomentSequence(HypergroupPtr h, std::size_t rank, unsigned order,
                               std::map<MultiIndex, CFunction> entries, Validation validation)
    : h_(std::move(h)), rank_(rank), order_(order), entries_(std::move(entries)) {
  if (!h_) throw PreconditionError("moment sequence needs a hypergroup");
  for (const auto& alpha : indices_up_to(rank_, order_)) {
    if (!entries_.count(alpha)) {
      throw PreconditionError("moment sequence has no entry for " + alpha.to_string());
    }
  }
  for (const auto& [alpha, f] : entries_) {
    if (alpha.rank() != rank_) {
      throw PreconditionError("entry " + alpha.to_string() + " does not have rank " +
                              std::to_string(rank_));
    }
  }
  if (validation == Validation::check_phi0) {
    Report r;
    try {
      r = is_exponential(*h_, phi0(), default_pairs(*h_));
    } catch (const EvaluationError& e) {
      throw PreconditionError(std::string("phi_0 cannot be evaluated: ") + e.what());
    }
    if (const Check* bad = r.first_failure()) {
      throw PreconditionError("phi_0 is not an exponential: " + bad->name + " fails at " +
                              bad->counterexample.value_or("?"));
    }
    phi0_verified_ = true;
  }
}

const CFunction& MomentSequence::at(const MultiIndex& alpha) const {
  auto it = entries_.find(alpha);
  if (it == entries_.end()) {
    throw DomainError("moment sequence has no entry for " + alpha.to_string());
  }
  return it->second;
}

MomentSequence MomentSequence::with_entry(const MultiIndex& alpha, CFunction f) const {
  MomentSequence copy = *this;
  copy.entries_[alpha] = std::move(f);
  copy.phi0_verified_ = phi0_verified_ && !alpha.is_zero();
  return copy;
}

DerivationFamily::DerivationFamily(HypergroupPtr h, std::size_t rank, unsigned order,
                                   std::map<MultiIndex, MeasureOperator> entries,
                                   bool source_verified)
    : h_(std::move(h)), rank_(rank), order_(order), entries_(std::move(entries)),
      source_verified_(source_verified) {
  for (const auto& alpha : indices_up_to(rank_, order_)) {
    if (!entries_.count(alpha)) {
      throw PreconditionError("derivation family has no entry for " + alpha.to_string());
    }
  }
}

const MeasureOperator& DerivationFamily::at(const MultiIndex& alpha) const {
  auto it = entries_.find(alpha);
  if (it == entries_.end()) {
    throw DomainError("derivation family has no entry for " + alpha.to_string());
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Builtin sequences

MomentSequence realline_moment_sequence(HypergroupPtr realline, Complex lambda, unsigned order) {
  if (!realline || !realline->is_realline()) {
    throw DomainError("real-line moments need the real line");
  }
  std::map<MultiIndex, CFunction> entries;
  for (unsigned k = 0; k <= order; ++k) entries.emplace(MultiIndex{k}, realline_moment_function(k, lambda));
  return MomentSequence(std::move(realline), 1, order, std::move(entries));
}

MomentSequence polynomial_derivative_sequence(HypergroupPtr h, Complex z, unsigned order) {
  if (!h || !h->polynomial()) throw DomainError("derivative sequence needs a polynomial hypergroup");
  std::map<MultiIndex, CFunction> entries;
  for (unsigned k = 0; k <= order; ++k) entries.emplace(MultiIndex{k}, polynomial_derivative_function(h, k, z));
  return MomentSequence(std::move(h), 1, order, std::move(entries));
}

MomentSequence lift_rank(const MomentSequence& rank_one, std::vector<Complex> weights) {
  if (rank_one.rank() != 1) throw DomainError("lift_rank expects a rank-1 sequence");
  if (weights.empty()) throw DomainError("lift_rank needs one weight per axis");
  std::map<MultiIndex, CFunction> entries;
  for (const auto& alpha : indices_up_to(weights.size(), rank_one.order())) {
    const CFunction& base = rank_one.at(MultiIndex{alpha.order()});
    if (alpha.is_zero()) {
      entries.emplace(alpha, base);
      continue;
    }
    Complex scale = 1.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      for (unsigned e = 0; e < alpha[i]; ++e) scale *= weights[i];
    }
    entries.emplace(alpha, scale * base);
  }
  return MomentSequence(rank_one.hypergroup(), weights.size(), rank_one.order(), std::move(entries),
                        rank_one.phi0_verified() ? MomentSequence::Validation::check_phi0
                                                 : MomentSequence::Validation::skip);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string anchor_for(const MultiIndex& alpha) {
  if (alpha.is_zero()) return "D_0(mu * nu) = D_0 mu * D_0 nu";
  if (alpha.order() == 1) return "D_a(mu * nu) = D_0 mu * D_a nu + D_a mu * D_0 nu";
  return "D_a(mu * nu) = sum_{b <= a} binom(a, b) D_b mu * D_{a-b} nu";
}

// Evaluates phi_beta at points, remembering results; builtin evaluators can
// be expensive and the identity reuses every value many times.
class ValueCache {
 public:
  explicit ValueCache(const std::map<MultiIndex, CFunction>& entries) : entries_(entries) {}
  Complex operator()(const MultiIndex& beta, const Point& p) {
    auto key = std::pair{beta, p};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto it = entries_.find(beta);
    if (it == entries_.end()) throw PreconditionError("no entry for " + beta.to_string());
    const Complex v = it->second(p);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  const std::map<MultiIndex, CFunction>& entries_;
  std::map<std::pair<MultiIndex, Point>, Complex> memo_;
};

// Normalized residual of the moment identity for alpha at (x, y).
double moment_residual(const Hypergroup& h, ValueCache& values, const MultiIndex& alpha,
                       const Point& x, const Point& y, Tolerance tol) {
  Complex lhs{};
  double scale = 1.0;
  for (const auto& [z, w] : convolve_points(h, x, y)) {
    const Complex term = w * values(alpha, z);
    lhs += term;
    scale = std::max(scale, std::abs(term));
  }
  Complex rhs{};
  for (const auto& beta : lower_indices(alpha)) {
    const Complex term = static_cast<double>(multi_binomial(alpha, beta)) * values(beta, x) *
                         values(alpha - beta, y);
    rhs += term;
    scale = std::max(scale, std::abs(term));
  }
  return tol.normalized(std::abs(lhs - rhs), scale);
}

std::string pair_label(const Point& x, const Point& y) {
  return "(x, y) = (" + x.to_string() + ", " + y.to_string() + ")";
}

}  // namespace

Report verify_moment_sequence(const MomentSequence& phi, const std::vector<PointPair>& pairs,
                              Tolerance tol) {
  if (pairs.empty()) throw PreconditionError("verify_moment_sequence needs sample pairs");
  const Hypergroup& h = *phi.hypergroup();
  Report report;
  report.title = "moment sequence of rank " + std::to_string(phi.rank()) + ", order " +
                 std::to_string(phi.order());
  ValueCache values(phi.entries());

  CheckBuilder unit("phi_0 at identity", "phi_0(o) = 1", tol.relative);
  try {
    const Complex v = values(MultiIndex::zero(phi.rank()), h.identity());
    std::ostringstream os;
    os << "phi_0(o) = " << v;
    unit.observe(tol.normalized(std::abs(v - 1.0), 1.0), os.str());
  } catch (const EvaluationError& e) {
    unit.error(e.what());
  }
  report.add(unit.finish());

  for (const auto& alpha : indices_up_to(phi.rank(), phi.order())) {
    CheckBuilder check("moment[" + alpha.to_string() + "]",
                       "phi_a(x * y) = sum_{b <= a} binom(a, b) phi_b(x) phi_{a-b}(y)",
                       tol.relative);
    for (const auto& [x, y] : pairs) {
      try {
        check.observe(moment_residual(h, values, alpha, x, y, tol), pair_label(x, y));
      } catch (const EvaluationError& e) {
        check.error(pair_label(x, y) + ": " + e.what());
      }
    }
    report.add(check.finish());
  }
  return report;
}

DerivationFamily derivation_from_moments(const MomentSequence& phi,
                                         const std::vector<PointPair>& pairs, Tolerance tol) {
  const Report r = verify_moment_sequence(phi, pairs, tol);
  if (const Check* bad = r.first_failure()) {
    throw PreconditionError("moment sequence fails " + bad->name + " at " +
                            bad->counterexample.value_or("?"));
  }
  auto family = derivation_from_moments_unverified(phi);
  return DerivationFamily(family.hypergroup(), family.rank(), family.order(), family.entries(),
                          true);
}

DerivationFamily derivation_from_moments_unverified(const MomentSequence& phi) {
  std::map<MultiIndex, MeasureOperator> ops;
  for (const auto& [alpha, f] : phi.entries()) ops.emplace(alpha, make_module_hom(f));
  return DerivationFamily(phi.hypergroup(), phi.rank(), phi.order(), std::move(ops), false);
}

MomentSequence moments_from_derivation(const DerivationFamily& d,
                                       const std::vector<Point>& points) {
  std::map<MultiIndex, CFunction> entries;
  for (const auto& [alpha, op] : d.entries()) {
    entries.emplace(alpha, symbol_of(op, d.hypergroup(), points));
  }
  return MomentSequence(d.hypergroup(), d.rank(), d.order(), std::move(entries),
                        MomentSequence::Validation::skip);
}

Report verify_leibniz(const DerivationFamily& d, const std::vector<MeasurePair>& samples,
                      const std::vector<CFunction>& probes, Tolerance tol) {
  if (samples.empty()) throw PreconditionError("verify_leibniz needs sample pairs");
  Report report;
  report.title = "higher order derivation of rank " + std::to_string(d.rank()) + ", order " +
                 std::to_string(d.order());

  // images[i][beta] = (D_beta mu_i, D_beta nu_i)
  std::vector<std::map<MultiIndex, std::pair<Measure, Measure>>> images(samples.size());
  std::vector<Measure> products;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [mu, nu] = samples[i];
    for (const auto& [beta, op] : d.entries()) images[i].emplace(beta, std::pair{op(mu), op(nu)});
    products.push_back(convolve(mu, nu));
  }

  for (const auto& alpha : indices_up_to(d.rank(), d.order())) {
    const std::string label = "leibniz[" + alpha.to_string() + "]";
    CheckBuilder measures(label, anchor_for(alpha), tol.relative);
    CheckBuilder probed(label + " probes", anchor_for(alpha) + ", paired with probes",
                        tol.relative);
    CheckBuilder mass(label + " total mass", anchor_for(alpha) + ", paired with 1", tol.relative);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Measure lhs = d.at(alpha)(products[i]);
      std::vector<Measure> terms;
      Measure rhs = Measure::zero(d.hypergroup());
      for (const auto& beta : lower_indices(alpha)) {
        const Measure term = convolve(images[i].at(beta).first, images[i].at(alpha - beta).second) *
                             Complex(static_cast<double>(multi_binomial(alpha, beta)));
        rhs = rhs + term;
        terms.push_back(term);
      }
      const std::string where = "sample " + std::to_string(i);
      measures.observe(identity_residual(lhs, rhs, terms, tol), where);
      {
        const Complex l = lhs.total_mass();
        Complex r{};
        double scale = std::max(1.0, std::abs(l));
        for (const auto& t : terms) {
          r += t.total_mass();
          scale = std::max(scale, std::abs(t.total_mass()));
        }
        mass.observe(tol.normalized(std::abs(l - r), scale), where);
      }
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const std::string pwhere = where + ", probe " + std::to_string(p);
        try {
          const Complex l = pair(lhs, probes[p]);
          Complex r{};
          double scale = std::max(1.0, std::abs(l));
          for (const auto& t : terms) {
            const Complex v = pair(t, probes[p]);
            r += v;
            scale = std::max(scale, std::abs(v));
          }
          probed.observe(tol.normalized(std::abs(l - r), scale), pwhere);
        } catch (const EvaluationError& e) {
          probed.error(pwhere + ": " + e.what());
        }
      }
    }
    report.add(measures.finish());
    report.add(mass.finish());
    if (!probes.empty()) report.add(probed.finish());
  }
  return report;
}

Report verify_d0_derivation(const MeasureOperator& d0, const MeasureOperator& d,
                            const std::vector<MeasurePair>& samples, Tolerance tol) {
  if (samples.empty()) throw PreconditionError("verify_d0_derivation needs sample pairs");
  Report report;
  report.title = d.name() + " as a derivation over " + d0.name();
  const Report pre = is_multiplicative_hom(d0, samples, tol);
  Check c{"precondition", "D_0 is a multiplicative module homomorphism", Status::pass,
          pre.worst_residual(), std::nullopt, std::nullopt};
  if (const Check* bad = pre.first_failure()) {
    c.status = Status::error;
    c.worst_residual = bad->worst_residual;
    c.counterexample = bad->counterexample;
    c.note = "D_0 fails " + bad->name;
  }
  report.add(c);
  CheckBuilder check("D0-derivation", "D(mu * nu) = D_0 mu * D nu + D mu * D_0 nu", tol.relative);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [mu, nu] = samples[i];
    const Measure lhs = d(convolve(mu, nu));
    const Measure t1 = convolve(d0(mu), d(nu));
    const Measure t2 = convolve(d(mu), d0(nu));
    check.observe(identity_residual(lhs, t1 + t2, {t1, t2}, tol), "sample " + std::to_string(i));
  }
  report.add(check.finish());
  return report;
}

// ---------------------------------------------------------------------------
// Extension solver

bool AffineSolutionSet::zero_only(Tolerance tol) const {
  if (!unique()) return false;
  for (const auto& v : particular) {
    if (!tol.accepts(std::abs(v), 1.0)) return false;
  }
  return true;
}

CFunction vector_function(const Hypergroup& h, const std::vector<Complex>& values) {
  const auto pts = h.points();
  if (pts.size() != values.size()) throw DomainError("value vector does not match the carrier");
  std::map<Point, Complex> table;
  for (std::size_t i = 0; i < pts.size(); ++i) table.emplace(pts[i], values[i]);
  return CFunction::table(std::move(table));
}

AffineSolutionSet extend_moment_sequence(const HypergroupPtr& h,
                                         const std::map<MultiIndex, CFunction>& lower,
                                         const MultiIndex& alpha, Tolerance tol) {
  if (!h || !h->finite()) {
    throw DomainError("moment extension is only available on finite hypergroups");
  }
  if (alpha.is_zero()) throw DomainError("extension target must have positive order");
  const auto pts = h->points();
  const std::size_t s = pts.size();
  const auto lowers = lower_indices(alpha);
  for (const auto& beta : lowers) {
    if (beta != alpha && !lower.count(beta)) {
      throw PreconditionError("lower entry " + beta.to_string() + " is missing");
    }
  }

  ValueCache values(lower);
  try {
    for (const auto& beta : lowers) {
      if (beta == alpha) continue;
      for (const auto& x : pts) {
        for (const auto& y : pts) {
          const double r = moment_residual(*h, values, beta, x, y, tol);
          if (!(r <= tol.relative)) {
            std::ostringstream os;
            os << "lower entry " << beta.to_string() << " violates its moment identity at "
               << pair_label(x, y) << " (normalized residual " << r << ")";
            throw PreconditionError(os.str());
          }
        }
      }
    }
  } catch (const EvaluationError& e) {
    throw PreconditionError(std::string("lower entries cannot be evaluated: ") + e.what());
  }

  const MultiIndex zero = MultiIndex::zero(alpha.rank());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(s * s),
                                              static_cast<Eigen::Index>(s));
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s * s));
  double b_scale = 1.0;
  for (std::size_t xi = 0; xi < s; ++xi) {
    for (std::size_t yi = 0; yi < s; ++yi) {
      const auto row = static_cast<Eigen::Index>(xi * s + yi);
      for (const auto& [z, w] : convolve_points(*h, pts[xi], pts[yi])) {
        a(row, static_cast<Eigen::Index>(z.as_index())) += w;
      }
      a(row, static_cast<Eigen::Index>(yi)) -= values(zero, pts[xi]);
      a(row, static_cast<Eigen::Index>(xi)) -= values(zero, pts[yi]);
      Complex rhs{};
      for (const auto& beta : lowers) {
        if (beta.is_zero() || beta == alpha) continue;
        const Complex term = static_cast<double>(multi_binomial(alpha, beta)) *
                             values(beta, pts[xi]) * values(alpha - beta, pts[yi]);
        rhs += term;
        b_scale = std::max(b_scale, std::abs(term));
      }
      b(row) = rhs;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double largest = sigma.size() ? sigma(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > 1e-10 * std::max(1.0, largest)) ++rank;
  }
  svd.setThreshold(1e-10 * std::max(1.0, largest) / std::max(largest, 1e-300));
  const Eigen::VectorXcd x = svd.solve(b);

  AffineSolutionSet out;
  out.unknowns = s;
  out.equations = s * s;
  out.rank = rank;
  out.residual = (a * x - b).cwiseAbs().maxCoeff();
  out.consistent = tol.accepts(out.residual, b_scale);
  if (!out.consistent) return out;
  for (std::size_t i = 0; i < s; ++i) out.particular.push_back(x(static_cast<Eigen::Index>(i)));
  const auto& v = svd.matrixV();
  for (std::size_t j = rank; j < s; ++j) {
    std::vector<Complex> col;
    for (std::size_t i = 0; i < s; ++i) {
      col.push_back(v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    out.null_basis.push_back(std::move(col));
  }
  return out;
}

std::vector<ExtensionStep> extend_iteratively(const HypergroupPtr& h, const CFunction& phi0,
                                              std::size_t rank, unsigned max_order,
                                              Tolerance tol) {
  std::map<MultiIndex, CFunction> lower{{MultiIndex::zero(rank), phi0}};
  std::vector<ExtensionStep> steps;
  for (const auto& alpha : indices_up_to(rank, max_order)) {
    if (alpha.is_zero()) continue;
    auto solution = extend_moment_sequence(h, lower, alpha, tol);
    if (!solution.consistent) {
      steps.push_back({alpha, std::move(solution)});
      break;
    }
    lower.emplace(alpha, vector_function(*h, solution.particular));
    steps.push_back({alpha, std::move(solution)});
  }
  return steps;
}

}  // namespace hyperderiv
