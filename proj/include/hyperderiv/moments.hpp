#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperderiv/function.hpp"
#include "hyperderiv/measure.hpp"
#include "hyperderiv/multi_index.hpp"
#include "hyperderiv/operator.hpp"
#include "hyperderiv/report.hpp"
#include "hyperderiv/tolerance.hpp"

namespace hyperderiv {

/// Generalized moment function sequence of rank r truncated at order N:
/// alpha -> phi_alpha for every |alpha| <= N.
///
/// Truncation is exact because the defining identity for alpha only
/// involves beta <= alpha.
class MomentSequence {
 public:
  enum class Validation {
    /// phi_0 must pass `is_exponential` on the hypergroup's default pairs.
    check_phi0,
    /// Accepted as given; `phi0_verified()` reports false.
    skip,
  };

  /// Throws PreconditionError if an index of order <= `order` is missing,
  /// an entry has the wrong rank, or phi_0 fails the exponential check.
  MomentSequence(HypergroupPtr h, std::size_t rank, unsigned order,
                 std::map<MultiIndex, CFunction> entries,
                 Validation validation = Validation::check_phi0);

  const HypergroupPtr& hypergroup() const { return h_; }
  std::size_t rank() const { return rank_; }
  unsigned order() const { return order_; }
  const CFunction& at(const MultiIndex& alpha) const;
  const CFunction& phi0() const { return at(MultiIndex::zero(rank_)); }
  const std::map<MultiIndex, CFunction>& entries() const { return entries_; }
  bool phi0_verified() const { return phi0_verified_; }

  /// Copy with one entry replaced, without re-validation.
  MomentSequence with_entry(const MultiIndex& alpha, CFunction f) const;

 private:
  HypergroupPtr h_;
  std::size_t rank_;
  unsigned order_;
  std::map<MultiIndex, CFunction> entries_;
  bool phi0_verified_ = false;
};

/// Family alpha -> D_alpha of measure operators, |alpha| <= N.
class DerivationFamily {
 public:
  DerivationFamily(HypergroupPtr h, std::size_t rank, unsigned order,
                   std::map<MultiIndex, MeasureOperator> entries, bool source_verified);

  const HypergroupPtr& hypergroup() const { return h_; }
  std::size_t rank() const { return rank_; }
  unsigned order() const { return order_; }
  const MeasureOperator& at(const MultiIndex& alpha) const;
  const std::map<MultiIndex, MeasureOperator>& entries() const { return entries_; }
  /// True when built from a moment sequence that passed verification.
  bool source_verified() const { return source_verified_; }

 private:
  HypergroupPtr h_;
  std::size_t rank_;
  unsigned order_;
  std::map<MultiIndex, MeasureOperator> entries_;
  bool source_verified_;
};

/// x -> x^k e^{lambda x} on the real line.
MomentSequence realline_moment_sequence(HypergroupPtr realline, Complex lambda,
                                        unsigned order);
/// n -> P_n^{(k)}(z) on a polynomial hypergroup.
MomentSequence polynomial_derivative_sequence(HypergroupPtr h, Complex z, unsigned order);

/// Rank-r sequence phi_alpha = prod_i w_i^{alpha_i} psi_{|alpha|} built from
/// a rank-1 sequence psi; one weight per axis. The result satisfies the
/// moment identity whenever psi does.
MomentSequence lift_rank(const MomentSequence& rank_one, std::vector<Complex> weights);

/// Checks phi_alpha(x * y) = sum_{beta <= alpha} binom(alpha, beta)
/// phi_beta(x) phi_{alpha - beta}(y) for every alpha and sampled pair, plus
/// phi_0(o) = 1. One check per alpha, named `moment[alpha]`.
Report verify_moment_sequence(const MomentSequence& phi, const std::vector<PointPair>& pairs,
                              Tolerance tol = default_tolerance());

/// D_alpha = multiplication by phi_alpha. Runs `verify_moment_sequence` on
/// `pairs` first and throws PreconditionError if it fails.
DerivationFamily derivation_from_moments(const MomentSequence& phi,
                                         const std::vector<PointPair>& pairs,
                                         Tolerance tol = default_tolerance());
/// Same without verification; the family records `source_verified() == false`.
DerivationFamily derivation_from_moments_unverified(const MomentSequence& phi);

/// phi_alpha(x) = <D_alpha delta_x, 1>, tabulated at `points`.
MomentSequence moments_from_derivation(const DerivationFamily& d,
                                       const std::vector<Point>& points);

/// Generalized Leibniz rule D_alpha(mu * nu) = sum binom(alpha, beta)
/// D_beta mu * D_{alpha - beta} nu. For each alpha: `leibniz[alpha]`
/// compares both sides as measures, `leibniz[alpha] total mass` compares
/// their pairings with 1, and `leibniz[alpha] probes` (when probes are
/// given) their pairings with each probe.
///
/// On a group, families built from moment sequences satisfy all three. On
/// a hypergroup whose point products are not point masses, multiplication
/// by phi_alpha does not commute with splitting delta_x * delta_y, so only
/// the total-mass form follows from the moment identity.
Report verify_leibniz(const DerivationFamily& d, const std::vector<MeasurePair>& samples,
                      const std::vector<CFunction>& probes,
                      Tolerance tol = default_tolerance());

/// D(mu * nu) = D0 mu * D nu + D mu * D0 nu. The precondition that D0 is
/// multiplicative is reported as an `error` check when it fails.
Report verify_d0_derivation(const MeasureOperator& d0, const MeasureOperator& d,
                            const std::vector<MeasurePair>& samples,
                            Tolerance tol = default_tolerance());

/// Solution set of a linear system: particular + span(null_basis).
struct AffineSolutionSet {
  bool consistent = false;
  std::vector<Complex> particular;
  std::vector<std::vector<Complex>> null_basis;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  double residual = 0.0;

  bool unique() const { return consistent && null_basis.empty(); }
  /// Unique and the solution is zero within `tol`.
  bool zero_only(Tolerance tol = default_tolerance()) const;
};

/// Solves for phi_alpha on a finite hypergroup given phi_beta for every
/// beta < alpha. The unknown is (phi_alpha(x))_x; one equation per ordered
/// pair (x, y). Throws PreconditionError if the given lower entries violate
/// their own moment identities, DomainError on infinite carriers.
AffineSolutionSet extend_moment_sequence(const HypergroupPtr& h,
                                         const std::map<MultiIndex, CFunction>& lower,
                                         const MultiIndex& alpha,
                                         Tolerance tol = default_tolerance());

struct ExtensionStep {
  MultiIndex alpha;
  AffineSolutionSet solution;
};

/// Extends phi0 through every alpha of the given rank with 0 < |alpha| <=
/// max_order, feeding each particular solution back as a lower entry.
std::vector<ExtensionStep> extend_iteratively(const HypergroupPtr& h, const CFunction& phi0,
                                              std::size_t rank, unsigned max_order,
                                              Tolerance tol = default_tolerance());

/// Tabulates a coefficient vector over the carrier of a finite hypergroup.
CFunction vector_function(const Hypergroup& h, const std::vector<Complex>& values);

}  // namespace hyperderiv
