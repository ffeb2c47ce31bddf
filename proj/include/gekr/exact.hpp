#ifndef GEKR_EXACT_HPP
#define GEKR_EXACT_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "gekr/bounds.hpp"
#include "gekr/core.hpp"
#include "gekr/magnitude.hpp"

// Desk-scale oracles: exhaustive enumeration of triple-deficiency probabilities and exact
// maximum GEKR families by branch and bound.

namespace gekr {

/// All k-subsets of an n-set as bitmasks, in colexicographic order.
inline std::vector<std::uint64_t> k_subsets(int n, int k) {
  if (n < 0 || n > 63 || k < 0 || k > n) throw Error("k_subsets requires 0 <= k <= n <= 63");
  std::vector<std::uint64_t> out;
  if (k == 0) return {0};
  std::uint64_t x = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (x < limit) {
    out.push_back(x);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

/// Exact probability that three independent uniform weight-r rows of length n miss `pattern`.
/// Row 1 is fixed by symmetry; all C(n,r)^2 choices of rows 2 and 3 are enumerated.
inline ExactProb enumerate_missing_prob(int n, int r, Pattern pattern) {
  if (n < 1 || n > 8 || r < 1 || r > n) throw Error("enumerate_missing_prob requires 1 <= r <= n <= 8");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::vector<std::uint64_t> rows = k_subsets(n, r);
  const std::uint64_t a = rows.front();
  auto pick = [full](bool bit, std::uint64_t x) { return bit ? x : ~x & full; };
  const std::uint64_t pa = pick(pattern.at(0), a);
  std::uint64_t missing = 0;
  for (std::uint64_t b : rows) {
    const std::uint64_t pab = pa & pick(pattern.at(1), b);
    for (std::uint64_t c : rows)
      if ((pab & pick(pattern.at(2), c)) == 0) ++missing;
  }
  const auto total = static_cast<std::uint64_t>(rows.size()) * rows.size();
  return ExactProb(BigInt(missing), BigInt(total));
}

/// True iff the three sets witness all four GEKR regions.
inline bool gekr_triple(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return (a & b & c) && (a & b & ~c) && (a & ~b & c) && (~a & b & c);
}

struct MaxFamilyResult {
  std::size_t size = 0;
  std::vector<std::uint64_t> witness;  // k-subsets as bitmasks
  bool exact = false;                  // false: node_limit hit, size is the best found
  std::uint64_t nodes = 0;
};

inline ArrayMatrix family_to_array(const std::vector<std::uint64_t>& family, int n) {
  ArrayMatrix out(family.size(), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (int j = 0; j < n; ++j) out.set(i, static_cast<std::size_t>(j), (family[i] >> j) & 1);
  out.infer_weight();
  return out;
}

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t bits = 0) : words_(words_for(bits), 0) {}
  void set(std::size_t i) { words_[i / 64] |= Word{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(Word{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (Word x = words_[w]; x; x &= x - 1) f(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
  }

 private:
  std::vector<Word> words_;
};

}  // namespace detail

/// Maximum family of distinct k-subsets of an n-set in which every three members are GEKR.
inline MaxFamilyResult max_family(int n, int k, std::uint64_t node_limit = 10'000'000) {
  if (n < 1 || n > 63 || k < 0 || k > n) throw Error("max_family requires 0 <= k <= n <= 63");
  if (binomial(n, k) > 4096) throw Error("max_family requires C(n,k) <= 4096");
  if (node_limit < 1) throw Error("node_limit must be positive");
  const std::vector<std::uint64_t> cand = k_subsets(n, k);
  const std::size_t N = cand.size();

  MaxFamilyResult result;
  result.exact = true;
  result.size = std::min<std::size_t>(N, 2);
  result.witness.assign(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(result.size));
  if (N < 3) return result;

  // Pairs that can sit in a family of three or more: intersecting, and (when cheap) completable.
  std::vector<detail::Bitset> adj(N, detail::Bitset(N));
  const bool completable_check = N <= 512;
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = x + 1; y < N; ++y) {
      if (!(cand[x] & cand[y])) continue;
      bool ok = true;
      if (completable_check) {
        ok = false;
        for (std::size_t z = 0; z < N && !ok; ++z)
          ok = z != x && z != y && gekr_triple(cand[x], cand[y], cand[z]);
      }
      if (ok) {
        adj[x].set(y);
        adj[y].set(x);
      }
    }

  std::vector<std::size_t> family;
  bool aborted = false;

  std::function<void(detail::Bitset)> expand = [&](detail::Bitset pool) {
    if (aborted) return;
    if (++result.nodes > node_limit) {
      aborted = true;
      return;
    }
    if (family.size() > result.size) {
      result.size = family.size();
      result.witness.clear();
      for (std::size_t idx : family) result.witness.push_back(cand[idx]);
    }
    std::size_t remaining = pool.count();
    std::vector<std::size_t> order;
    pool.for_each([&](std::size_t c) { order.push_back(c); });
    for (std::size_t c : order) {
      if (aborted || family.size() + remaining <= result.size) return;
      pool.reset(c);
      --remaining;
      detail::Bitset next = pool;
      next &= adj[c];
      if (!family.empty()) {
        std::vector<std::size_t> drop;
        next.for_each([&](std::size_t d) {
          for (std::size_t x : family)
            if (!gekr_triple(cand[x], cand[c], cand[d])) {
              drop.push_back(d);
              return;
            }
        });
        for (std::size_t d : drop) next.reset(d);
      }
      family.push_back(c);
      expand(std::move(next));
      family.pop_back();
    }
  };

  detail::Bitset all(N);
  for (std::size_t i = 0; i < N; ++i) all.set(i);
  expand(std::move(all));
  result.exact = !aborted;
  return result;
}

}  // namespace gekr

#endif  // GEKR_EXACT_HPP
