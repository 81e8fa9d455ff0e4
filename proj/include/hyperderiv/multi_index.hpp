#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hyperderiv {

/// Element of N^r.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<unsigned> c) : c_(c) {}
  explicit MultiIndex(std::vector<unsigned> c) : c_(std::move(c)) {}
  static MultiIndex zero(std::size_t rank) { return MultiIndex(std::vector<unsigned>(rank, 0)); }
  static MultiIndex unit(std::size_t rank, std::size_t axis);

  std::size_t rank() const { return c_.size(); }
  unsigned order() const;
  bool is_zero() const { return order() == 0; }
  unsigned operator[](std::size_t i) const { return c_[i]; }
  const std::vector<unsigned>& components() const { return c_; }

  /// Componentwise <=; false for different ranks.
  bool le(const MultiIndex& other) const;
  /// alpha - beta; DomainError unless beta <= alpha.
  MultiIndex operator-(const MultiIndex& beta) const;

  std::string to_string() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> c_;
};

/// Product of componentwise binomial coefficients; DomainError unless
/// beta <= alpha.
std::uint64_t multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// All beta <= alpha in lexicographic order.
std::vector<MultiIndex> lower_indices(const MultiIndex& alpha);

/// All alpha of the given rank with |alpha| <= order, by order and then
/// lexicographically.
std::vector<MultiIndex> indices_up_to(std::size_t rank, unsigned order);

}  // namespace hyperderiv
