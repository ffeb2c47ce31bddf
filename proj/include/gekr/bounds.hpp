#ifndef GEKR_BOUNDS_HPP
#define GEKR_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "gekr/core.hpp"
#include "gekr/magnitude.hpp"

// Lower bounds on the number of rows of a GEKR partial 3-covering array, for rows with
// independent Bernoulli(alpha) entries and for rows of fixed weight r = alpha*n.
//
// Each triple of rows is deficient with probability at most
//   p = P(111 missing) + 3 P(110 missing)
// and the local lemma with d + 1 <= 3m^2/2 guarantees a valid array whenever
//   (3 e_Euler / 2) m^2 p <= 1.

namespace gekr {

inline constexpr double kEuler = std::numbers::e;

// Rows above this size switch from exact rationals to log-space sums.
inline constexpr std::int64_t kExactLimit = 500;

namespace detail {

inline double xlogx(double x) {
  if (std::abs(x) < 1e-14) return 0.0;
  if (x < 0) throw Error("negative argument in x log x");
  return x * std::log(x);
}

// Neumaier-compensated sum of exp(terms[i] - shift).
inline double compensated_exp_sum(const std::vector<double>& terms, double shift) {
  double sum = 0, comp = 0;
  for (double t : terms) {
    const double v = std::exp(t - shift);
    const double s = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  return sum + comp;
}

inline double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::lgamma(static_cast<long double>(n) + 1) -
                             std::lgamma(static_cast<long double>(k) + 1) -
                             std::lgamma(static_cast<long double>(n - k) + 1));
}

}  // namespace detail

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Independent model

/// p_n(alpha) = (1 - alpha^3)^n + 3 (1 - alpha^2 (1 - alpha))^n, in log space.
inline LogMagnitude p_independent(double alpha, std::int64_t n) {
  if (!(alpha >= 0 && alpha <= 1)) throw Error("alpha must lie in [0, 1]");
  if (n < 1) throw Error("n must be positive");
  const double nn = static_cast<double>(n);
  const double a3 = alpha * alpha * alpha;
  const double b = alpha * alpha * (1 - alpha);
  // alpha = 1 makes the first base exactly zero.
  const LogMagnitude first =
      a3 >= 1 ? LogMagnitude::zero() : LogMagnitude::from_ln(nn * std::log1p(-a3));
  const LogMagnitude second = LogMagnitude::from_ln(std::log(3.0) + nn * std::log1p(-b));
  return first + second;
}

/// Largest m with (3 e_Euler / 2) m^2 p <= 1, i.e. sqrt(2 / (3 e_Euler p)).
inline LogMagnitude lll_max_rows(const LogMagnitude& p) {
  if (p.is_zero()) throw Error("lll_max_rows requires p > 0");
  return LogMagnitude::from_log10(0.5 * (std::log10(2.0 / (3.0 * kEuler)) - p.log10()));
}

/// zeta(n): the independent-model row bound.
inline LogMagnitude zeta(double alpha, std::int64_t n) { return lll_max_rows(p_independent(alpha, n)); }

// ---------------------------------------------------------------------------
// Fixed-weight model, exact sums
//
// u is the overlap |A cap B| of the first two rows.
//   phi(u) = C(r,u) C(n-r,r-u) C(n-u,r)   / C(n,r)^2   third row avoids A cap B    (111 missing)
//   psi(u) = C(r,u) C(n-r,r-u) C(n-u,n-r) / C(n,r)^2   third row contains A cap B  (110 missing)

struct SumRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;  // empty when hi < lo
  bool empty() const { return hi < lo; }
};

inline SumRange phi_range(std::int64_t n, std::int64_t r) {
  return {std::max<std::int64_t>(0, 2 * r - n), std::min(r, n - r)};
}

inline SumRange psi_range(std::int64_t n, std::int64_t r) { return {std::max<std::int64_t>(0, 2 * r - n), r}; }

namespace detail {
inline void check_nr(std::int64_t n, std::int64_t r) {
  if (n < 1) throw Error("n must be positive");
  if (r < 0 || r > n) throw Error("r must lie in [0, n]");
}
}  // namespace detail

inline ExactProb phi_term(std::int64_t n, std::int64_t r, std::int64_t u) {
  detail::check_nr(n, r);
  const SumRange range = phi_range(n, r);
  if (u < range.lo || u > range.hi) throw Error("u outside the summation range of phi");
  const BigInt c = binomial(n, r);
  return ExactProb(binomial(r, u) * binomial(n - r, r - u) * binomial(n - u, r), c * c);
}

inline ExactProb psi_term(std::int64_t n, std::int64_t r, std::int64_t u) {
  detail::check_nr(n, r);
  const SumRange range = psi_range(n, r);
  if (u < range.lo || u > range.hi) throw Error("u outside the summation range of psi");
  const BigInt c = binomial(n, r);
  return ExactProb(binomial(r, u) * binomial(n - r, r - u) * binomial(n - u, n - r), c * c);
}

struct FixedSums {
  ExactProb sigma1;  // P(111 missing)
  ExactProb sigma2;  // P(110 missing)
  ExactProb total;   // sigma1 + 3 sigma2; may exceed 1
};

inline FixedSums p_fixed_exact(std::int64_t n, std::int64_t r) {
  detail::check_nr(n, r);
  const BigInt c = binomial(n, r);
  const BigInt den = c * c;
  BigInt s1 = 0, s2 = 0;
  if (const SumRange range = phi_range(n, r); !range.empty())
    for (std::int64_t u = range.lo; u <= range.hi; ++u)
      s1 += binomial(r, u) * binomial(n - r, r - u) * binomial(n - u, r);
  for (std::int64_t u = psi_range(n, r).lo; u <= r; ++u)
    s2 += binomial(r, u) * binomial(n - r, r - u) * binomial(n - u, n - r);
  ExactProb sigma1(s1, den), sigma2(s2, den);
  return {sigma1, sigma2, ExactProb(sigma1.value() + 3 * sigma2.value())};
}

struct FixedSumsLog {
  LogMagnitude sigma1;
  LogMagnitude sigma2;
  LogMagnitude total;
};

/// Same sums as p_fixed_exact, evaluated with log-gamma and compensated summation.
inline FixedSumsLog p_fixed_log(std::int64_t n, std::int64_t r) {
  detail::check_nr(n, r);
  const double log_den = 2 * detail::log_binomial(n, r);
  auto sum = [&](SumRange range, auto&& third) {
    if (range.empty()) return LogMagnitude::zero();
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(range.hi - range.lo + 1));
    for (std::int64_t u = range.lo; u <= range.hi; ++u)
      terms.push_back(detail::log_binomial(r, u) + detail::log_binomial(n - r, r - u) + third(u) - log_den);
    const double shift = *std::max_element(terms.begin(), terms.end());
    return LogMagnitude::from_ln(shift + std::log(detail::compensated_exp_sum(terms, shift)));
  };
  const LogMagnitude s1 = sum(phi_range(n, r), [&](std::int64_t u) { return detail::log_binomial(n - u, r); });
  const LogMagnitude s2 = sum(psi_range(n, r), [&](std::int64_t u) { return detail::log_binomial(n - u, n - r); });
  return {s1, s2, s1 + s2 * LogMagnitude::from_value(3.0)};
}

/// Union bound on the deficiency probability of a fixed-weight triple; exact for n <= kExactLimit.
inline LogMagnitude p_fixed(std::int64_t n, std::int64_t r) {
  if (n <= kExactLimit) return p_fixed_exact(n, r).total.magnitude();
  return p_fixed_log(n, r).total;
}

// ---------------------------------------------------------------------------
// Ratio-test quadratics
//
// phi(u+1)/phi(u) >= 1  iff  (n-r+2) u^2 + (r^2-2r-n^2-n+1) u + (nr^2-r^3-n^2+2nr-n) >= 0
// psi(u+1)/psi(u) >= 1  iff  (r+2) u^2 + (-3r^2-n^2+2rn-n-2r+1) u + (r^3-n^2+2rn-n) >= 0

struct QuadraticRoots {
  double lower = 0;
  double upper = 0;
  BigInt a, b, c;

  BigInt discriminant() const { return b * b - 4 * a * c; }

  // |a x^2 + b x + c| relative to the magnitude of its terms.
  double relative_residual(double x) const {
    const long double A = a.convert_to<long double>(), B = b.convert_to<long double>(),
                      C = c.convert_to<long double>(), X = x;
    const long double value = (A * X + B) * X + C;
    const long double scale = std::abs(A * X * X) + std::abs(B * X) + std::abs(C);
    return scale == 0 ? 0.0 : static_cast<double>(std::abs(value) / scale);
  }
};

namespace detail {
inline QuadraticRoots solve_quadratic(BigInt a, BigInt b, BigInt c) {
  const BigInt disc = b * b - 4 * a * c;
  if (disc < 0) throw Error("negative discriminant: no interior extremum");
  if (a == 0) throw Error("degenerate quadratic");
  const long double sq = std::sqrt(disc.convert_to<long double>());
  const long double A = a.convert_to<long double>(), B = b.convert_to<long double>(),
                    C = c.convert_to<long double>();
  // Cancellation-free pair: q = -(b + sign(b) sqrt(D)) / 2, roots q/a and c/q.
  const long double q = -0.5L * (B + (B >= 0 ? sq : -sq));
  long double x1 = q / A, x2 = q != 0 ? C / q : x1;
  if (x1 > x2) std::swap(x1, x2);
  return {static_cast<double>(x1), static_cast<double>(x2), std::move(a), std::move(b), std::move(c)};
}
}  // namespace detail

inline QuadraticRoots phi_ratio_roots(std::int64_t n, std::int64_t r) {
  detail::check_nr(n, r);
  const BigInt N = n, R = r;
  return detail::solve_quadratic(N - R + 2, R * R - 2 * R - N * N - N + 1, N * R * R - R * R * R - N * N + 2 * N * R - N);
}

inline QuadraticRoots psi_ratio_roots(std::int64_t n, std::int64_t r) {
  detail::check_nr(n, r);
  const BigInt N = n, R = r;
  return detail::solve_quadratic(R + 2, -3 * R * R - N * N + 2 * R * N - N - 2 * R + 1, R * R * R - N * N + 2 * R * N - N);
}

/// gamma(n, r), written out term by term; equals the discriminant of the phi quadratic.
inline BigInt gamma_radicand(std::int64_t n, std::int64_t r) {
  const BigInt N = n, R = r;
  return 1 - 2 * N * R * R - 16 * N * R - 4 * R + 6 * N + 6 * R * R + 11 * N * N + 4 * R * R * R -
         6 * R * R * N * N - 3 * R * R * R * R + N * N * N * N + 6 * N * N * N - 8 * R * N * N + 8 * R * R * R * N;
}

/// delta(n, alpha), written out term by term; equals the discriminant of the psi quadratic.
inline BigRational delta_radicand(std::int64_t n, const Fraction& alpha) {
  const BigRational N = n, a(BigInt(alpha.num), BigInt(alpha.den));
  const BigRational N2 = N * N, N3 = N2 * N, N4 = N3 * N, a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  return 1 - 4 * a * N - 2 * a2 * N2 - 4 * a * N2 + 4 * a3 * N3 + 7 * N2 + 6 * N + 5 * a4 * N4 + 10 * a2 * N4 -
         12 * a3 * N4 - 10 * a2 * N3 - 4 * a * N4 + 2 * N3 + N4 + 4 * a * N3;
}

// ---------------------------------------------------------------------------
// Asymptotic profile

/// Per-alpha Stirling exponents; beta and xi exist only for alpha <= 2/3.
struct AsymptoticProfile {
  double alpha = 0;
  double e_coeff = 0;
  double f_coeff = 0;
  std::optional<double> beta;
  double kappa = 0;
  std::optional<double> xi;
  double theta = 0;
  double mu = 0;
};

inline double e_coeff(double a) { return 1 - 3 * a * a * a * a - 6 * a * a + 8 * a * a * a; }
inline double f_coeff(double a) { return -2 * a * a + 4 * a * a * a + 6 - 8 * a; }

/// Limit of u1/n, the location of the largest phi term.
inline double beta_of(double a) {
  if (!(a >= 0 && a < 1)) throw Error("beta requires alpha in [0, 1)");
  return (1 - a * a - std::sqrt(std::max(0.0, e_coeff(a)))) / (2 - 2 * a);
}

/// Limit of u2/n.
inline double u2_over_n(double a) {
  if (!(a >= 0 && a < 1)) throw Error("u2 requires alpha in [0, 1)");
  return (1 - a * a + std::sqrt(std::max(0.0, e_coeff(a)))) / (2 - 2 * a);
}

inline double kappa_radicand(double a) { return 1 + 10 * a * a - 12 * a * a * a - 4 * a + 5 * a * a * a * a; }

/// Limit of v1/n, the location of the largest psi term.
inline double kappa_of(double a) {
  if (!(a > 0 && a <= 1)) throw Error("kappa requires alpha in (0, 1]");
  return (3 * a * a + 1 - 2 * a - std::sqrt(std::max(0.0, kappa_radicand(a)))) / (2 * a);
}

inline double v2_over_n(double a) {
  if (!(a > 0 && a <= 1)) throw Error("v2 requires alpha in (0, 1]");
  return (3 * a * a + 1 - 2 * a + std::sqrt(std::max(0.0, kappa_radicand(a)))) / (2 * a);
}

/// ln xi(alpha): exponential rate of phi(beta n); alpha in (0, 2/3].
inline double log_xi(double a) {
  if (!(a > 0 && a <= 2.0 / 3.0 + 1e-12)) throw Error("xi is defined for alpha in (0, 2/3]");
  using detail::xlogx;
  const double b = beta_of(a);
  return 2 * xlogx(a) + 3 * xlogx(1 - a) + xlogx(1 - b) - xlogx(b) - 2 * xlogx(a - b) - xlogx(1 - 2 * a + b) -
         xlogx(1 - a - b);
}

/// ln theta(alpha): exponential rate of psi(kappa n); alpha in (0, 1].
inline double log_theta(double a) {
  using detail::xlogx;
  const double k = kappa_of(a);
  return 3 * xlogx(a) + 2 * xlogx(1 - a) + xlogx(1 - k) - xlogx(k) - 3 * xlogx(a - k) - xlogx(1 - 2 * a + k);
}

inline double log_mu(double a) { return a <= 0.5 ? log_xi(a) : log_theta(a); }

inline AsymptoticProfile asymptotic_profile(double alpha) {
  if (!(alpha > 0 && alpha <= 1)) throw Error("alpha must lie in (0, 1]");
  AsymptoticProfile p;
  p.alpha = alpha;
  p.e_coeff = e_coeff(alpha);
  p.f_coeff = f_coeff(alpha);
  if (alpha <= 2.0 / 3.0 + 1e-12) {
    p.beta = beta_of(alpha);
    p.xi = std::exp(log_xi(alpha));
  }
  p.kappa = kappa_of(alpha);
  p.theta = std::exp(log_theta(alpha));
  p.mu = alpha <= 0.5 ? *p.xi : p.theta;
  return p;
}

// ---------------------------------------------------------------------------
// nu_n(alpha)

enum class NuMode { Asymptotic, ExactSum };

/// n^{-1/4} mu(alpha)^{-n/2}: the fixed-weight bound with K = 1 and the (1 + o(1)) factor dropped.
inline LogMagnitude nu_asymptotic(double alpha, std::int64_t n) {
  if (!(alpha > 0 && alpha < 1)) throw Error("alpha must lie in (0, 1)");
  if (n < 1) throw Error("n must be positive");
  const double nn = static_cast<double>(n);
  return LogMagnitude::from_log10(-0.25 * std::log10(nn) - 0.5 * nn * log_mu(alpha) / std::log(10.0));
}

/// sqrt(2 / (3 e_Euler p)) with p the exact union bound; zero rows when p > 1.
inline LogMagnitude nu_exact_sum(std::int64_t n, std::int64_t r) {
  LogMagnitude p;
  bool above_one = false;
  if (n <= kExactLimit) {
    const ExactProb exact = p_fixed_exact(n, r).total;
    above_one = exact.value() > 1;
    p = exact.magnitude();
  } else {
    p = p_fixed_log(n, r).total;
    above_one = p.log10() > 0;
  }
  if (p.is_zero()) throw Error("deficiency probability is zero; no finite local-lemma bound");
  if (above_one) return LogMagnitude::zero();
  return lll_max_rows(p);
}

inline LogMagnitude nu(const Fraction& alpha, std::int64_t n, NuMode mode) {
  if (mode == NuMode::Asymptotic) return nu_asymptotic(alpha.value(), n);
  const ModelParams params = ModelParams::fixed_weight(n, alpha);
  return nu_exact_sum(params.n, params.r);
}

/// floor of the ExactSum bound as a concrete row count.
inline std::int64_t lll_row_count(std::int64_t n, std::int64_t r) {
  const LogMagnitude m = nu_exact_sum(n, r);
  if (m.is_zero()) return 0;
  if (m.log10() > 18) throw Error("row bound too large for a concrete count");
  return static_cast<std::int64_t>(std::floor(m.value()));
}

}  // namespace gekr

#endif  // GEKR_BOUNDS_HPP
