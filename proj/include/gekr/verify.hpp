#ifndef GEKR_VERIFY_HPP
#define GEKR_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <vector>

#include "gekr/core.hpp"

namespace gekr {

namespace detail {

// Words of a & b for the four (b1, b2) combinations, indexed b1<<1 | b2.
struct PairPlanes {
  std::vector<Word> plane[4];

  PairPlanes(std::span<const Word> a, std::span<const Word> b) {
    for (auto& p : plane) p.resize(a.size());
    for (std::size_t w = 0; w < a.size(); ++w) {
      plane[0][w] = ~a[w] & ~b[w];
      plane[1][w] = ~a[w] & b[w];
      plane[2][w] = a[w] & ~b[w];
      plane[3][w] = a[w] & b[w];
    }
  }
};

// Returns the mask of required patterns with no witnessing column.
inline std::uint8_t missing_mask(const PairPlanes& pair, std::span<const Word> c, std::uint8_t required,
                                 Word last_mask) {
  std::uint8_t pending = required;
  const std::size_t words = c.size();
  for (std::size_t w = 0; w < words && pending; ++w) {
    const Word valid = w + 1 == words ? last_mask : ~Word{0};
    const Word c1 = c[w] & valid;
    const Word c0 = ~c[w] & valid;
    for (std::uint8_t rest = pending; rest;) {
      const int idx = std::countr_zero(rest);
      rest &= static_cast<std::uint8_t>(rest - 1);
      if (pair.plane[idx >> 1][w] & ((idx & 1) ? c1 : c0)) pending &= static_cast<std::uint8_t>(~(1u << idx));
    }
  }
  return pending;
}

}  // namespace detail

/// Patterns of `patterns` that appear in no column of the three rows.
inline PatternMask triple_coverage(std::span<const Word> a, std::span<const Word> b, std::span<const Word> c,
                                           std::size_t n, PatternSet patterns) {
  if (a.size() != words_for(n) || b.size() != a.size() || c.size() != a.size())
    throw Error("row length mismatch");
  return PatternMask{detail::missing_mask(detail::PairPlanes(a, b), c, patterns.mask(), tail_mask(n))};
}

inline PatternMask triple_coverage(const ArrayMatrix& array, Triple t, PatternSet patterns) {
  return triple_coverage(array.row(t.i), array.row(t.j), array.row(t.l), array.cols(), patterns);
}

/// Position of a triple in the lexicographic order of all C(m,3) triples.
inline std::uint64_t triple_rank(std::size_t m, Triple t) {
  auto c2 = [](std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; };
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < t.i; ++i) rank += c2(m - 1 - i);
  for (std::size_t j = t.i + 1; j < t.j; ++j) rank += m - 1 - j;
  return rank + (t.l - t.j - 1);
}

inline std::uint64_t triple_count(std::size_t m) {
  const std::uint64_t x = m;
  return x < 3 ? 0 : x * (x - 1) * (x - 2) / 6;
}

struct VerifyOptions {
  bool stop_early = false;
  unsigned workers = 1;
  // Cap on triples stored in the report; X still counts all of them.
  std::size_t max_listed = std::numeric_limits<std::size_t>::max();
};

/// Scans all triples i < j < l. Workers split the first index; results merge in lexicographic order.
inline DeficiencyReport find_deficient(const ArrayMatrix& array, PatternSet patterns, VerifyOptions options = {}) {
  const std::size_t m = array.rows();
  const std::size_t n = array.cols();
  const Word last = tail_mask(n);
  DeficiencyReport report;
  if (m < 3) return report;

  struct Slot {
    std::vector<DeficientTriple> found;
    std::uint64_t count = 0;
  };
  std::vector<Slot> slots(m);
  std::atomic<std::size_t> next_i{0};
  // Smallest first index that holds a deficient triple, for early exit.
  std::atomic<std::size_t> first_bad{m};

  auto work = [&] {
    for (;;) {
      const std::size_t i = next_i.fetch_add(1);
      if (i + 2 >= m) return;
      if (options.stop_early && i > first_bad.load()) return;
      Slot& slot = slots[i];
      for (std::size_t j = i + 1; j + 1 < m; ++j) {
        const detail::PairPlanes pair(array.row(i), array.row(j));
        for (std::size_t l = j + 1; l < m; ++l) {
          const std::uint8_t miss = detail::missing_mask(pair, array.row(l), patterns.mask(), last);
          if (!miss) continue;
          ++slot.count;
          if (options.stop_early || slot.found.size() < options.max_listed) slot.found.push_back({{i, j, l}, PatternMask{miss}});
          if (options.stop_early) {
            std::size_t cur = first_bad.load();
            while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(m)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  if (options.stop_early) {
    const std::size_t i = first_bad.load();
    if (i == m) {
      report.total_checked = triple_count(m);
      return report;
    }
    const DeficientTriple& hit = slots[i].found.front();
    report.deficient_triples.push_back(hit);
    report.deficient_count = 1;
    report.total_checked = triple_rank(m, hit.rows) + 1;
    return report;
  }

  report.total_checked = triple_count(m);
  for (Slot& slot : slots) {
    report.deficient_count += slot.count;
    for (auto& d : slot.found) {
      if (report.deficient_triples.size() >= options.max_listed) break;
      report.deficient_triples.push_back(d);
    }
  }
  return report;
}

inline bool is_gekr(const ArrayMatrix& array, unsigned workers = 1) {
  return find_deficient(array, PatternSet::gekr(), {.stop_early = true, .workers = workers}).ok();
}

}  // namespace gekr

#endif  // GEKR_VERIFY_HPP
