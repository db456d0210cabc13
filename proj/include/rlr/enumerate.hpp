#pragma once

// Index bookkeeping shared by the cochain charts and the exhaustive checks:
// k-subsets of a basis in lexicographic order, and the bijection between
// field-element tuples of GF(p)^n and integers in [0, p^n).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rlr/gfp.hpp"

namespace rlr {

/// All increasing k-tuples drawn from {0, ..., n-1}, lexicographic.
class Combinations {
 public:
  Combinations(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t i) const { return tuples_[i]; }
  const std::vector<std::vector<std::size_t>>& all() const noexcept { return tuples_; }
  /// Index of a strictly increasing tuple.
  std::size_t index_of(const std::vector<std::size_t>& sorted) const;

 private:
  std::size_t n_, k_;
  std::vector<std::vector<std::size_t>> tuples_;
  std::vector<std::size_t> lookup_;  // mixed-radix key -> index
};

std::size_t binomial(std::size_t n, std::size_t k);

/// p^n, or throws BudgetExceeded if it exceeds `budget`.
std::uint64_t checked_power(std::uint32_t p, std::size_t n, std::uint64_t budget,
                            const std::string& quantifier);
/// p^n, saturating at UINT64_MAX.
std::uint64_t saturating_power(std::uint32_t p, std::size_t n);

/// Coordinate vector with base-p digits of `index` (least significant first).
Vec element_from_index(std::uint32_t p, std::size_t n, std::uint64_t index);
std::uint64_t index_of_element(std::uint32_t p, std::span<const Scalar> v);

/// Sorts a small index tuple in place and returns the permutation sign
/// (+1 / -1) or 0 when an index repeats.
int sort_with_sign(std::vector<std::size_t>& idx);

/// Standard basis vector e_i of GF(p)^n.
Vec unit(std::size_t n, std::size_t i);

/// Elements of GF(p)^n a quantified check ranges over. When exhaustive
/// enumeration does not fit the budget this is 0, the basis vectors and their
/// pairwise sums, and `partial` is set.
struct ElementSet {
  std::vector<Vec> elements;
  bool partial = false;
};

/// One element set per factor of GF(p)^{n_1} x ... x GF(p)^{n_k}. Either all
/// are exhaustive (when p^{n_1+...+n_k} fits the budget) or all are probes.
std::vector<ElementSet> quantifier_sets(std::uint32_t p, const std::vector<std::size_t>& dims,
                                        std::uint64_t budget);

}  // namespace rlr
