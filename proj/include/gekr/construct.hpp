#ifndef GEKR_CONSTRUCT_HPP
#define GEKR_CONSTRUCT_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <vector>

#include "gekr/core.hpp"
#include "gekr/verify.hpp"

// Randomness
// ----------
// All generators are std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Seeds are derived with SplitMix64:
//   row i of the initial sample:  splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)
//   resampling / greedy stream:   splitmix64(seed ^ 0xD1B54A32D192ED03)
// Bounded integers use rejection on the raw 64-bit output and Bernoulli draws compare the top
// 53 bits against alpha, so no std:: distribution (whose algorithms are unspecified) is involved.

namespace gekr {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline Rng row_stream(std::uint64_t seed, std::uint64_t row) {
  return Rng(splitmix64(seed + (row + 1) * 0x9E3779B97F4A7C15ull));
}

inline Rng resample_stream(std::uint64_t seed) { return Rng(splitmix64(seed ^ 0xD1B54A32D192ED03ull)); }

// Uniform in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Draws one row in place: r uniform columns (partial Fisher-Yates) or independent Bernoulli(alpha) bits.
class RowSampler {
 public:
  explicit RowSampler(const ModelParams& params) : params_(params), columns_(static_cast<std::size_t>(params.n)) {
    if (params.n < 1) throw Error("n must be positive");
    if (params.model == Model::FixedWeight && (params.r < 0 || params.r > params.n))
      throw Error("row weight must lie in [0, n]");
  }

  void operator()(Rng& rng, std::span<Word> row) {
    std::fill(row.begin(), row.end(), Word{0});
    const auto n = static_cast<std::size_t>(params_.n);
    if (params_.model == Model::FixedWeight) {
      std::iota(columns_.begin(), columns_.end(), std::uint32_t{0});
      for (std::size_t t = 0; t < static_cast<std::size_t>(params_.r); ++t) {
        const std::size_t pick = t + uniform_below(rng, n - t);
        std::swap(columns_[t], columns_[pick]);
        const std::uint32_t col = columns_[t];
        row[col / kWordBits] |= Word{1} << (col % kWordBits);
      }
    } else {
      const double alpha = params_.alpha.value();
      for (std::size_t j = 0; j < n; ++j)
        if (uniform_unit(rng) < alpha) row[j / kWordBits] |= Word{1} << (j % kWordBits);
    }
  }

 private:
  ModelParams params_;
  std::vector<std::uint32_t> columns_;
};

inline ArrayMatrix sample_rows(const ModelParams& params, std::size_t m, std::uint64_t seed) {
  ArrayMatrix out(m, static_cast<std::size_t>(params.n));
  RowSampler sample(params);
  for (std::size_t i = 0; i < m; ++i) {
    Rng rng = row_stream(seed, i);
    sample(rng, out.row(i));
  }
  if (params.model == Model::FixedWeight && m > 0) out.declare_weight(static_cast<std::size_t>(params.r));
  return out;
}

enum class Strategy { Rejection, MoserTardos, Greedy };

struct ConstructionConfig {
  ModelParams params;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_resamples = 1'000'000;
  Strategy strategy = Strategy::MoserTardos;
  std::size_t attempts_per_row = 10'000;  // Greedy only
  unsigned workers = 1;
  std::ostream* progress = nullptr;  // resample count every 10^4 steps
};

struct ConstructionResult {
  bool success = false;
  ArrayMatrix array;  // on failure, the last state reached
  std::uint64_t resamples = 0;
};

namespace detail {
inline void validate(const ConstructionConfig& config) {
  if (config.params.n < 1) throw Error("n must be positive");
  if (config.max_resamples < 1) throw Error("max_resamples must be at least 1");
  if (config.params.model == Model::FixedWeight && (config.params.r < 0 || config.params.r > config.params.n))
    throw Error("row weight must lie in [0, n]");
}

inline void report_progress(const ConstructionConfig& config, std::uint64_t resamples) {
  if (config.progress && resamples % 10'000 == 0) *config.progress << "resamples: " << resamples << '\n';
}
}  // namespace detail

/// Moser-Tardos: resample the three rows of the lexicographically smallest deficient triple until none remains.
inline ConstructionResult moser_tardos(const ConstructionConfig& config) {
  detail::validate(config);
  ConstructionResult result;
  result.array = sample_rows(config.params, config.m, config.seed);
  RowSampler sample(config.params);
  Rng rng = resample_stream(config.seed);
  const VerifyOptions scan{.stop_early = true, .workers = config.workers};
  for (;;) {
    const DeficiencyReport report = find_deficient(result.array, PatternSet::gekr(), scan);
    if (report.ok()) {
      result.success = true;
      return result;
    }
    if (result.resamples >= config.max_resamples) return result;
    const Triple t = report.deficient_triples.front().rows;
    for (std::size_t row : {t.i, t.j, t.l}) sample(rng, result.array.row(row));
    ++result.resamples;
    detail::report_progress(config, result.resamples);
  }
}

/// Redraws the whole array until it is GEKR; each redraw counts as one resample.
inline ConstructionResult rejection_sample(const ConstructionConfig& config) {
  detail::validate(config);
  ConstructionResult result;
  result.array = sample_rows(config.params, config.m, config.seed);
  RowSampler sample(config.params);
  Rng rng = resample_stream(config.seed);
  for (;;) {
    if (is_gekr(result.array, config.workers)) {
      result.success = true;
      return result;
    }
    if (result.resamples >= config.max_resamples) return result;
    for (std::size_t i = 0; i < result.array.rows(); ++i) sample(rng, result.array.row(i));
    ++result.resamples;
    detail::report_progress(config, result.resamples);
  }
}

/// A GEKR array that grows one row at a time; a candidate is accepted iff it forms no deficient
/// triple with any pair of existing rows. Pair planes are cached, so a check costs O(m^2 n / 64).
class IncrementalGekr {
 public:
  explicit IncrementalGekr(std::size_t n) : array_(0, n), last_(tail_mask(n)) {}

  bool accepts(std::span<const Word> candidate) const {
    if (candidate.size() != array_.stride()) throw Error("row length mismatch");
    const std::uint8_t required = PatternSet::gekr().mask();
    for (const auto& pair : pairs_)
      if (detail::missing_mask(pair, candidate, required, last_)) return false;
    return true;
  }

  void add(std::span<const Word> row) {
    for (std::size_t i = 0; i < array_.rows(); ++i) pairs_.emplace_back(array_.row(i), row);
    array_.append_row(row);
  }

  bool try_add(std::span<const Word> candidate) {
    if (!accepts(candidate)) return false;
    add(candidate);
    return true;
  }

  const ArrayMatrix& array() const { return array_; }

 private:
  ArrayMatrix array_;
  Word last_;
  std::vector<detail::PairPlanes> pairs_;
};

/// Appends fresh random rows accepted by IncrementalGekr; stops after `attempts_per_row`
/// consecutive rejections (or at max_rows).
inline ArrayMatrix greedy_extend(const ModelParams& params, std::uint64_t seed, std::size_t attempts_per_row,
                                 std::size_t max_rows = std::numeric_limits<std::size_t>::max()) {
  if (params.model != Model::FixedWeight) throw Error("greedy_extend requires fixed-weight rows");
  if (attempts_per_row < 1) throw Error("attempts_per_row must be positive");
  const auto n = static_cast<std::size_t>(params.n);
  IncrementalGekr family(n);
  RowSampler sample(params);
  Rng rng = resample_stream(seed);
  std::vector<Word> candidate(words_for(n));
  std::size_t rejections = 0;
  while (family.array().rows() < max_rows && rejections < attempts_per_row) {
    sample(rng, candidate);
    rejections = family.try_add(candidate) ? 0 : rejections + 1;
  }
  ArrayMatrix out = family.array();
  if (out.rows() > 0) out.declare_weight(static_cast<std::size_t>(params.r));
  return out;
}

inline ConstructionResult construct(const ConstructionConfig& config) {
  switch (config.strategy) {
    case Strategy::MoserTardos:
      return moser_tardos(config);
    case Strategy::Rejection:
      return rejection_sample(config);
    case Strategy::Greedy: {
      ConstructionResult result;
      result.array = greedy_extend(config.params, config.seed, config.attempts_per_row,
                                   config.m == 0 ? std::numeric_limits<std::size_t>::max() : config.m);
      result.success = config.m == 0 || result.array.rows() >= config.m;
      return result;
    }
  }
  throw Error("unknown strategy");
}

}  // namespace gekr

#endif  // GEKR_CONSTRUCT_HPP
