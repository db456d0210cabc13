#include "rlr/enumerate.hpp"

#include <limits>

#include "rlr/errors.hpp"

namespace rlr {

namespace {

void build(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
           std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    build(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::size_t key(std::size_t n, const std::vector<std::size_t>& t) {
  std::size_t k = 0;
  for (auto i : t) k = k * n + i;
  return k;
}

}  // namespace

Combinations::Combinations(std::size_t n, std::size_t k) : n_(n), k_(k) {
  std::vector<std::size_t> cur;
  if (k <= n) build(n, k, 0, cur, tuples_);
  std::size_t space = 1;
  for (std::size_t i = 0; i < k; ++i) space *= std::max<std::size_t>(n, 1);
  lookup_.assign(space, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < tuples_.size(); ++i) lookup_[key(n, tuples_[i])] = i;
}

std::size_t Combinations::index_of(const std::vector<std::size_t>& sorted) const {
  std::size_t idx = lookup_.at(key(n_, sorted));
  if (idx == std::numeric_limits<std::size_t>::max()) throw InputError("index tuple is not increasing");
  return idx;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t saturating_power(std::uint32_t p, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

std::uint64_t checked_power(std::uint32_t p, std::size_t n, std::uint64_t budget,
                            const std::string& quantifier) {
  std::uint64_t r = saturating_power(p, n);
  if (r > budget) throw BudgetExceeded(quantifier, r, budget);
  return r;
}

Vec element_from_index(std::uint32_t p, std::size_t n, std::uint64_t index) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<Scalar>(index % p);
    index /= p;
  }
  return v;
}

std::uint64_t index_of_element(std::uint32_t p, std::span<const Scalar> v) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

int sort_with_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v.at(i) = 1;
  return v;
}

std::vector<ElementSet> quantifier_sets(std::uint32_t p, const std::vector<std::size_t>& dims,
                                        std::uint64_t budget) {
  std::size_t total = 0;
  for (auto n : dims) total += n;
  const bool full = saturating_power(p, total) <= budget;
  std::vector<ElementSet> out;
  for (auto n : dims) {
    ElementSet s;
    s.partial = !full;
    if (full) {
      std::uint64_t count = saturating_power(p, n);
      for (std::uint64_t i = 0; i < count; ++i) s.elements.push_back(element_from_index(p, n, i));
    } else {
      s.elements.push_back(Vec(n, 0));
      for (std::size_t i = 0; i < n; ++i) s.elements.push_back(unit(n, i));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Vec v = unit(n, i);
          v[j] = 1;
          s.elements.push_back(std::move(v));
        }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rlr
