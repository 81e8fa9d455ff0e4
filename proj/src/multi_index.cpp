#include "hyperderiv/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {

MultiIndex MultiIndex::unit(std::size_t rank, std::size_t axis) {
  if (axis >= rank) throw DomainError("unit multi-index axis out of range");
  std::vector<unsigned> c(rank, 0);
  c[axis] = 1;
  return MultiIndex(std::move(c));
}

unsigned MultiIndex::order() const { return std::accumulate(c_.begin(), c_.end(), 0u); }

bool MultiIndex::le(const MultiIndex& other) const {
  if (rank() != other.rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (c_[i] > other.c_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator-(const MultiIndex& beta) const {
  if (!beta.le(*this)) {
    throw DomainError(beta.to_string() + " is not below " + to_string());
  }
  std::vector<unsigned> d(rank());
  for (std::size_t i = 0; i < rank(); ++i) d[i] = c_[i] - beta.c_[i];
  return MultiIndex(std::move(d));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

std::uint64_t multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!beta.le(alpha)) {
    throw DomainError("binomial coefficient needs " + beta.to_string() + " <= " +
                      alpha.to_string());
  }
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < alpha.rank(); ++i) {
    const unsigned n = alpha[i];
    const unsigned k = std::min(beta[i], n - beta[i]);
    std::uint64_t c = 1;
    for (unsigned j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    result *= c;
  }
  return result;
}

std::vector<MultiIndex> lower_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(alpha.rank(), 0);
  // Odometer with the last component varying fastest gives lexicographic order.
  while (true) {
    out.emplace_back(cur);
    std::size_t i = alpha.rank();
    while (i > 0 && cur[i - 1] == alpha[i - 1]) {
      cur[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t rank, unsigned order) {
  if (rank == 0) throw DomainError("multi-index rank must be at least 1");
  std::vector<unsigned> top(rank, order);
  std::vector<MultiIndex> out;
  for (auto& a : lower_indices(MultiIndex(top))) {
    if (a.order() <= order) out.push_back(std::move(a));
  }
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return a.order() < b.order();
  });
  return out;
}

}  // namespace hyperderiv
