#ifndef GEKR_CORE_HPP
#define GEKR_CORE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gekr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Mask of the valid bits in the last word of an n-bit row.
constexpr Word tail_mask(std::size_t n) {
  const std::size_t rem = n % kWordBits;
  return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

/// Binary triple (b1, b2, b3) packed as b1<<2 | b2<<1 | b3.
struct Pattern {
  std::uint8_t bits = 0;

  constexpr Pattern() = default;
  constexpr Pattern(int b1, int b2, int b3)
      : bits(static_cast<std::uint8_t>((b1 ? 4 : 0) | (b2 ? 2 : 0) | (b3 ? 1 : 0))) {}

  static constexpr Pattern from_index(int index) {
    Pattern p;
    p.bits = static_cast<std::uint8_t>(index & 7);
    return p;
  }

  constexpr bool at(int position) const { return (bits >> (2 - position)) & 1; }
  constexpr int index() const { return bits; }

  std::string str() const {
    return {at(0) ? '1' : '0', at(1) ? '1' : '0', at(2) ? '1' : '0'};
  }

  friend constexpr bool operator==(Pattern, Pattern) = default;
};

/// Subset of {0,1}^3 (possibly empty) as an 8-bit membership mask; bit i is Pattern::from_index(i).
struct PatternMask {
  std::uint8_t mask = 0;

  constexpr bool empty() const { return mask == 0; }
  constexpr bool contains(Pattern p) const { return (mask >> p.index()) & 1; }
  constexpr int size() const { return std::popcount(mask); }

  std::vector<Pattern> members() const {
    std::vector<Pattern> out;
    for (int i = 7; i >= 0; --i)
      if ((mask >> i) & 1) out.push_back(Pattern::from_index(i));
    return out;
  }

  std::string str() const {
    std::string out;
    for (Pattern p : members()) {
      if (!out.empty()) out += ',';
      out += p.str();
    }
    return out;
  }

  friend constexpr bool operator==(PatternMask, PatternMask) = default;
};

/// Non-empty subset of {0,1}^3 that every row triple must cover.
class PatternSet {
 public:
  constexpr explicit PatternSet(std::uint8_t mask) : mask_(mask) {
    if (mask_ == 0) throw Error("pattern set must be non-empty");
  }

  static constexpr PatternSet gekr() {
    return PatternSet(static_cast<std::uint8_t>((1u << Pattern(0, 1, 1).index()) |
                                                (1u << Pattern(1, 0, 1).index()) |
                                                (1u << Pattern(1, 1, 0).index()) |
                                                (1u << Pattern(1, 1, 1).index())));
  }

  static PatternSet from_list(std::span<const Pattern> patterns) {
    std::uint8_t mask = 0;
    for (Pattern p : patterns) {
      if (mask & (1u << p.index())) throw Error("duplicate pattern " + p.str());
      mask |= static_cast<std::uint8_t>(1u << p.index());
    }
    return PatternSet(mask);
  }

  // Comma separated triples, e.g. "011,101,110,111".
  static PatternSet parse(std::string_view text) {
    std::vector<Pattern> list;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view item = text.substr(pos, comma - pos);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (item.size() != 3 || item.find_first_not_of("01") != std::string_view::npos)
        throw Error("bad pattern '" + std::string(item) + "'");
      list.emplace_back(item[0] == '1', item[1] == '1', item[2] == '1');
      pos = comma + 1;
    }
    return from_list(list);
  }

  constexpr bool contains(Pattern p) const { return (mask_ >> p.index()) & 1; }
  constexpr std::uint8_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  std::vector<Pattern> members() const { return PatternMask{mask_}.members(); }
  std::string str() const { return PatternMask{mask_}.str(); }

  friend constexpr bool operator==(PatternSet, PatternSet) = default;

 private:
  std::uint8_t mask_;
};

/// Exact non-negative rational used for alpha.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t numerator, std::int64_t denominator) : num(numerator), den(denominator) {
    if (den == 0) throw Error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Accepts "p/q" or a plain decimal such as "0.7395" (converted exactly).
  static Fraction parse(std::string_view text) {
    if (!text.empty() && text.front() == '-') {
      Fraction f = parse(text.substr(1));
      return Fraction(-f.num, f.den);
    }
    auto to_int = [&](std::string_view s) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error("bad number '" + std::string(text) + "'");
      return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos)
      return Fraction(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    std::string_view whole = text, frac;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      whole = text.substr(0, dot);
      frac = text.substr(dot + 1);
    }
    if (frac.size() > 15) throw Error("too many decimals in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : to_int(whole);
    const std::int64_t f = frac.empty() ? 0 : to_int(frac);
    if (f < 0 || (whole.empty() && frac.empty())) throw Error("bad number '" + std::string(text) + "'");
    return Fraction(w * den + f, den);
  }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

enum class Model { Independent, FixedWeight };

struct ModelParams {
  std::int64_t n = 0;
  Fraction alpha;
  std::int64_t r = 0;  // row weight; equals alpha*n for FixedWeight
  Model model = Model::FixedWeight;

  static ModelParams fixed_weight(std::int64_t n, std::int64_t r) {
    if (n <= 0) throw Error("n must be positive");
    if (r < 0 || r > n) throw Error("row weight must lie in [0, n]");
    return ModelParams{n, Fraction(r, n), r, Model::FixedWeight};
  }

  static ModelParams fixed_weight(std::int64_t n, Fraction alpha) {
    if (n <= 0) throw Error("n must be positive");
    if ((alpha.num * n) % alpha.den != 0)
      throw Error("alpha*n = " + alpha.str() + "*" + std::to_string(n) + " is not an integer");
    return fixed_weight(n, alpha.num * n / alpha.den);
  }

  static ModelParams independent(std::int64_t n, Fraction alpha) {
    if (n <= 0) throw Error("n must be positive");
    if (alpha.num < 0 || alpha.num > alpha.den) throw Error("alpha must lie in [0, 1]");
    return ModelParams{n, alpha, (alpha.num * n) / alpha.den, Model::Independent};
  }
};

/// m x n binary array, rows bit-packed into contiguous words; bit j of a row is column j.
class ArrayMatrix {
 public:
  ArrayMatrix() = default;
  ArrayMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), stride_(words_for(n)), words_(m * stride_, 0) {}

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t stride() const { return stride_; }

  std::span<const Word> row(std::size_t i) const { return {words_.data() + i * stride_, stride_}; }
  std::span<Word> row(std::size_t i) { return {words_.data() + i * stride_, stride_}; }

  bool get(std::size_t i, std::size_t j) const { return (row(i)[j / kWordBits] >> (j % kWordBits)) & 1; }
  void set(std::size_t i, std::size_t j, bool value) {
    Word& w = row(i)[j / kWordBits];
    const Word bit = Word{1} << (j % kWordBits);
    w = value ? (w | bit) : (w & ~bit);
  }

  std::size_t weight(std::size_t i) const {
    std::size_t total = 0;
    for (Word w : row(i)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  void append_row(std::span<const Word> bits) {
    if (bits.size() != stride_) throw Error("row length mismatch");
    words_.insert(words_.end(), bits.begin(), bits.end());
    words_.back() &= tail_mask(n_);
    ++m_;
    declared_weight_.reset();
  }

  void assign_row(std::size_t i, std::span<const Word> bits) {
    std::copy(bits.begin(), bits.end(), row(i).begin());
    row(i).back() &= tail_mask(n_);
  }

  std::optional<std::size_t> declared_weight() const { return declared_weight_; }

  // Sets declared_weight iff every row has the same weight (and m > 0).
  void infer_weight() {
    declared_weight_.reset();
    if (m_ == 0) return;
    const std::size_t k = weight(0);
    for (std::size_t i = 1; i < m_; ++i)
      if (weight(i) != k) return;
    declared_weight_ = k;
  }

  void declare_weight(std::size_t k) {
    if (k > n_) throw Error("declared weight exceeds n");
    for (std::size_t i = 0; i < m_; ++i)
      if (weight(i) != k) throw Error("row " + std::to_string(i) + " does not have weight " + std::to_string(k));
    declared_weight_ = k;
  }

  friend bool operator==(const ArrayMatrix& a, const ArrayMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> words_;
  std::optional<std::size_t> declared_weight_;
};

/// Parses one row per line of '0'/'1'; '#' lines are comments; LF or CRLF.
inline ArrayMatrix parse_array(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of("01") != std::string::npos)
      throw Error("line " + std::to_string(lines.size() + 1) + ": characters outside {0,1}");
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw Error("empty array");
  const std::size_t n = lines.front().size();
  ArrayMatrix out(lines.size(), n);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].size() != n) throw Error("ragged rows: row " + std::to_string(i) + " has length " +
                                          std::to_string(lines[i].size()) + ", expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, lines[i][j] == '1');
  }
  out.infer_weight();
  return out;
}

inline ArrayMatrix parse_array(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_array(in);
}

inline void write_array(std::ostream& out, const ArrayMatrix& a) {
  std::string line(a.cols(), '0');
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) line[j] = a.get(i, j) ? '1' : '0';
    out << line << '\n';
  }
}

inline std::string format_array(const ArrayMatrix& a) {
  std::ostringstream out;
  write_array(out, a);
  return out.str();
}

struct Triple {
  std::size_t i = 0, j = 0, l = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct DeficientTriple {
  Triple rows;
  PatternMask missing;
};

struct DeficiencyReport {
  std::vector<DeficientTriple> deficient_triples;
  std::uint64_t total_checked = 0;
  std::uint64_t deficient_count = 0;  // X

  bool ok() const { return deficient_count == 0; }
};

}  // namespace gekr

#endif  // GEKR_CORE_HPP
