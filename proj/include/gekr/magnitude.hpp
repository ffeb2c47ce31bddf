#ifndef GEKR_MAGNITUDE_HPP
#define GEKR_MAGNITUDE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "gekr/core.hpp"

namespace gekr {

/// A non-negative quantity stored as its base-10 logarithm, or an exact zero.
class LogMagnitude {
 public:
  LogMagnitude() = default;

  static LogMagnitude zero() { return LogMagnitude(); }
  static LogMagnitude from_log10(double log10_value) {
    if (!std::isfinite(log10_value)) throw Error("log10 must be finite");
    LogMagnitude x;
    x.zero_ = false;
    x.log10_ = log10_value;
    return x;
  }
  static LogMagnitude from_ln(double ln_value) { return from_log10(ln_value / std::log(10.0)); }
  static LogMagnitude from_value(double value) {
    if (value < 0 || std::isnan(value)) throw Error("magnitude must be non-negative");
    return value == 0 ? zero() : from_log10(std::log10(value));
  }

  bool is_zero() const { return zero_; }
  double log10() const { return zero_ ? -std::numeric_limits<double>::infinity() : log10_; }
  double ln() const { return log10() * std::log(10.0); }
  double value() const { return zero_ ? 0.0 : std::pow(10.0, log10_); }

  LogMagnitude operator*(const LogMagnitude& o) const {
    if (zero_ || o.zero_) return zero();
    return from_log10(log10_ + o.log10_);
  }
  LogMagnitude operator/(const LogMagnitude& o) const {
    if (o.zero_) throw Error("division by zero magnitude");
    if (zero_) return zero();
    return from_log10(log10_ - o.log10_);
  }
  LogMagnitude pow(double exponent) const {
    if (zero_) {
      if (exponent <= 0) throw Error("non-positive power of zero");
      return zero();
    }
    return from_log10(log10_ * exponent);
  }
  LogMagnitude operator+(const LogMagnitude& o) const {
    if (zero_) return o;
    if (o.zero_) return *this;
    const double hi = std::max(log10_, o.log10_);
    const double lo = std::min(log10_, o.log10_);
    return from_log10(hi + std::log1p(std::pow(10.0, lo - hi)) / std::log(10.0));
  }

  friend bool operator<(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.log10_ < b.log10_;
  }
  friend bool operator>(const LogMagnitude& a, const LogMagnitude& b) { return b < a; }

  struct Scientific {
    double mantissa = 0;  // 1 <= mantissa < 10, or 0 for zero
    long long exponent = 0;
  };

  // Mantissa rounded to `digits` significant digits, carrying into the exponent when it rounds to 10.
  Scientific scientific(int digits = 3) const {
    if (zero_) return {};
    long long exponent = static_cast<long long>(std::floor(log10_));
    const double scale = std::pow(10.0, digits - 1);
    double mantissa = std::round(std::pow(10.0, log10_ - static_cast<double>(exponent)) * scale) / scale;
    if (mantissa >= 10.0) {
      mantissa /= 10.0;
      ++exponent;
    }
    return {mantissa, exponent};
  }

  /// "M.MMeEXP", e.g. 2.26e289; exact zero renders "0".
  std::string render(int digits = 3) const {
    if (zero_) return "0";
    const Scientific s = scientific(digits);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%lld", digits - 1, s.mantissa, s.exponent);
    return buf;
  }

  static LogMagnitude parse(std::string_view text) {
    if (text == "0") return zero();
    const auto e = text.find_first_of("eE");
    if (e == std::string_view::npos) throw Error("bad magnitude '" + std::string(text) + "'");
    const std::string mant(text.substr(0, e));
    const std::string expo(text.substr(e + 1));
    std::size_t used = 0;
    double m = 0;
    long long x = 0;
    try {
      m = std::stod(mant, &used);
      if (used != mant.size()) throw Error("");
      x = std::stoll(expo, &used);
      if (used != expo.size()) throw Error("");
    } catch (const std::exception&) {
      throw Error("bad magnitude '" + std::string(text) + "'");
    }
    if (!(m > 0)) throw Error("bad magnitude '" + std::string(text) + "'");
    return from_log10(std::log10(m) + static_cast<double>(x));
  }

 private:
  bool zero_ = true;
  double log10_ = 0;
};

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// log10 of a positive big integer without overflowing double.
inline double log10_big(const BigInt& x) {
  if (x <= 0) throw Error("log10 of non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 960) return std::log10(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigInt top = x >> shift;
  return std::log10(top.convert_to<double>()) + static_cast<double>(shift) * std::log10(2.0);
}

/// Exact non-negative rational probability (always in lowest terms).
class ExactProb {
 public:
  ExactProb() = default;
  explicit ExactProb(BigRational value) : value_(std::move(value)) {
    if (value_ < 0) throw Error("negative probability");
  }
  ExactProb(const BigInt& num, const BigInt& den) {
    if (den <= 0) throw Error("denominator must be positive");
    if (num < 0) throw Error("negative probability");
    value_ = BigRational(num, den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const BigRational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  LogMagnitude magnitude() const {
    if (is_zero()) return LogMagnitude::zero();
    return LogMagnitude::from_log10(log10_big(numerator()) - log10_big(denominator()));
  }
  double to_double() const { return magnitude().value(); }

  std::string str() const {
    return denominator() == 1 ? numerator().str() : numerator().str() + "/" + denominator().str();
  }

  ExactProb operator+(const ExactProb& o) const { return ExactProb(value_ + o.value_); }
  ExactProb operator*(const ExactProb& o) const { return ExactProb(value_ * o.value_); }
  ExactProb& operator+=(const ExactProb& o) {
    value_ += o.value_;
    return *this;
  }

  friend bool operator==(const ExactProb& a, const ExactProb& b) { return a.value_ == b.value_; }
  friend bool operator<(const ExactProb& a, const ExactProb& b) { return a.value_ < b.value_; }

 private:
  BigRational value_{0};
};

}  // namespace gekr

#endif  // GEKR_MAGNITUDE_HPP
