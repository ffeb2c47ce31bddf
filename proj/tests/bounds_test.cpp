#include <gtest/gtest.h>

#include <cmath>

#include "gekr/bounds.hpp"
#include "gekr/exact.hpp"

using namespace gekr;

namespace {

ExactProb q(long num, long den) { return ExactProb(BigInt(num), BigInt(den)); }

// Independent log-binomial for the direct-scan oracles below.
double ln_choose(long n, long k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

long scan_argmax(long lo, long hi, auto&& log_term) {
  long best = lo;
  for (long u = lo + 1; u <= hi; ++u)
    if (log_term(u) > log_term(best)) best = u;
  return best;
}

}  // namespace

TEST(PIndependent, HalfIsFourSevenEighths) {
  for (std::int64_t n : {1, 7, 100, 10'000}) {
    const double expected = std::log10(4.0) + static_cast<double>(n) * std::log10(7.0 / 8.0);
    EXPECT_NEAR(p_independent(0.5, n).log10(), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(PIndependent, ZeroAlphaGivesFour) { EXPECT_NEAR(p_independent(0.0, 5).value(), 4.0, 1e-12); }

TEST(PIndependent, TwoThirdsAtTenThousand) {
  // mpmath at 50 digits: log10((19/27)^n + 3 (23/27)^n) for n = 10^4.
  EXPECT_NEAR(p_independent(2.0 / 3.0, 10'000).log10(), -695.8821601592, 1e-6);
}

TEST(PIndependent, AlphaOneLeavesOnlyTheSecondTerm) { EXPECT_NEAR(p_independent(1.0, 50).value(), 3.0, 1e-12); }

TEST(PIndependent, PiecewiseAsymptotics) {
  const std::int64_t n = 10'000;
  const double nn = static_cast<double>(n);
  for (double a : {0.1, 0.3, 0.45}) {
    const double ln_p = p_independent(a, n).ln();
    EXPECT_NEAR(ln_p - nn * std::log1p(-a * a * a), 0.0, 1e-6) << a;
  }
  for (double a : {0.55, 2.0 / 3.0, 0.9}) {
    const double ln_p = p_independent(a, n).ln();
    EXPECT_NEAR(ln_p - std::log(3.0) - nn * std::log1p(-a * a * (1 - a)), 0.0, 1e-6) << a;
  }
}

TEST(PIndependent, DomainErrors) {
  EXPECT_THROW(p_independent(1.5, 10), Error);
  EXPECT_THROW(p_independent(-0.1, 10), Error);
  EXPECT_THROW(p_independent(0.5, 0), Error);
}

TEST(Zeta, PublishedIndependentCells) {
  EXPECT_EQ(zeta(0.5, 10'000).render(), "2.26e289");
  EXPECT_EQ(zeta(2.0 / 3.0, 1'000'000).render(), "2.63e34817");
  // "a lower bound of ~ 2 * 10^91" for n = 10^9, alpha_n = 0.0075.
  EXPECT_EQ(zeta(0.0075, 1'000'000'000).render(), "2.01e91");
}

TEST(Zeta, StrictlyIncreasingInN) {
  for (double a : {0.05, 0.3, 0.5, 2.0 / 3.0, 0.95}) {
    double prev = -1e300;
    for (std::int64_t n = 1; n <= 3000; n += 37) {
      const double cur = zeta(a, n).log10();
      ASSERT_GT(cur, prev) << a << " " << n;
      prev = cur;
    }
  }
}

TEST(LllMaxRows, Inversion) {
  const double p = 2.0 / (3.0 * kEuler * 4.0);
  EXPECT_NEAR(lll_max_rows(LogMagnitude::from_value(p)).value(), 2.0, 1e-12);
  EXPECT_EQ(lll_max_rows(p_independent(0.5, 10'000)).render(), "2.26e289");
  EXPECT_LE(lll_max_rows(LogMagnitude::from_value(2.0 / (3.0 * kEuler))).value(), 1.0 + 1e-12);
  EXPECT_THROW(lll_max_rows(LogMagnitude::zero()), Error);
}

TEST(PhiTerm, Examples) {
  EXPECT_EQ(phi_term(4, 2, 0), q(1, 6));
  EXPECT_EQ(phi_term(6, 3, 1), q(9, 40));
  // n = r = 3: 2r - n = 3 > min(r, n - r) = 0, so no admissible u.
  EXPECT_TRUE(phi_range(3, 3).empty());
  EXPECT_THROW(phi_term(3, 3, 0), Error);
  EXPECT_THROW(phi_term(6, 3, 4), Error);
}

TEST(PsiTerm, Examples) {
  for (std::int64_t n : {1, 4, 9}) EXPECT_EQ(psi_term(n, n, n), q(1, 1));
  EXPECT_EQ(psi_term(4, 2, 2), q(1, 36));
  EXPECT_EQ(psi_term(4, 2, 0), q(1, 6));
  EXPECT_THROW(psi_term(4, 2, 3), Error);
  EXPECT_THROW(psi_term(4, 3, 1), Error);  // below 2r - n
}

TEST(PFixedExact, Examples) {
  const FixedSums all_ones = p_fixed_exact(4, 4);
  EXPECT_TRUE(all_ones.sigma1.is_zero());
  EXPECT_EQ(all_ones.sigma2, q(1, 1));
  EXPECT_EQ(all_ones.total, q(3, 1));
  // Frozen from an independent Python fractions computation.
  EXPECT_EQ(p_fixed_exact(6, 3).total, q(147, 100));
  EXPECT_EQ(p_fixed_exact(20, 14).total, q(6719, 277440));
  const FixedSums s = p_fixed_exact(6, 3);
  EXPECT_EQ(s.sigma1, enumerate_missing_prob(6, 3, {1, 1, 1}));
  EXPECT_EQ(s.sigma2, enumerate_missing_prob(6, 3, {1, 1, 0}));
}

TEST(PFixedExact, SigmaOneVanishesAboveTwoThirds) {
  for (std::int64_t n = 1; n <= 60; ++n)
    for (std::int64_t r = 0; r <= n; ++r)
      if (3 * r > 2 * n) {
        ASSERT_TRUE(p_fixed_exact(n, r).sigma1.is_zero()) << n << " " << r;
      }
  EXPECT_FALSE(p_fixed_exact(30, 20).sigma1.is_zero());
}

TEST(PFixedLog, AgreesWithExactAtTheRegimeBoundary) {
  for (auto [n, r] : {std::pair{500L, 250L}, {500L, 333L}, {499L, 100L}, {120L, 80L}}) {
    const FixedSums exact = p_fixed_exact(n, r);
    const FixedSumsLog approx = p_fixed_log(n, r);
    EXPECT_NEAR(approx.total.log10(), exact.total.magnitude().log10(), 1e-9 * std::abs(exact.total.magnitude().log10()));
    EXPECT_NEAR(approx.sigma2.log10(), exact.sigma2.magnitude().log10(), 1e-9 * std::abs(exact.sigma2.magnitude().log10()));
  }
}

TEST(RatioRoots, DiscriminantsMatchTheWrittenRadicands) {
  for (std::int64_t n = 2; n <= 40; ++n)
    for (std::int64_t r = 1; r < n; ++r) {
      const QuadraticRoots phi = phi_ratio_roots(n, r);
      ASSERT_EQ(phi.discriminant(), gamma_radicand(n, r)) << n << " " << r;
      const QuadraticRoots psi = psi_ratio_roots(n, r);
      ASSERT_EQ(BigRational(psi.discriminant()), delta_radicand(n, Fraction(r, n))) << n << " " << r;
    }
}

TEST(RatioRoots, PsiLeadingCoefficient) {
  const QuadraticRoots psi = psi_ratio_roots(10, 5);
  EXPECT_EQ(psi.a, 7);  // alpha n + 2
}

TEST(RatioRoots, Residuals) {
  for (std::int64_t n : {10L, 100L, 1000L, 100'000L})
    for (double a : {0.2, 0.5, 0.6, 0.8}) {
      const auto r = static_cast<std::int64_t>(a * static_cast<double>(n));
      for (const QuadraticRoots& q : {phi_ratio_roots(n, r), psi_ratio_roots(n, r)}) {
        EXPECT_LE(q.lower, q.upper);
        EXPECT_LE(q.relative_residual(q.lower), 1e-9) << n << " " << r;
        EXPECT_LE(q.relative_residual(q.upper), 1e-9) << n << " " << r;
      }
    }
}

TEST(RatioRoots, RatioTestSignMatchesDirectRatio) {
  // phi(u+1)/phi(u) >= 1 exactly when the quadratic is non-negative.
  const std::int64_t n = 40, r = 17;
  const QuadraticRoots q = phi_ratio_roots(n, r);
  const SumRange range = phi_range(n, r);
  for (std::int64_t u = range.lo; u < range.hi; ++u) {
    const bool increasing = phi_term(n, r, u + 1).value() >= phi_term(n, r, u).value();
    const BigInt value = q.a * u * u + q.b * u + q.c;
    EXPECT_EQ(increasing, value >= 0) << u;
  }
}

TEST(RatioRoots, ArgmaxAtHalf) {
  const std::int64_t n = 1000, r = 500;
  const long phi_max = scan_argmax(0, 500, [&](long u) { return ln_choose(r, u) + ln_choose(n - r, r - u) + ln_choose(n - u, r); });
  const long psi_max = scan_argmax(0, 500, [&](long u) { return ln_choose(r, u) + ln_choose(n - r, r - u) + ln_choose(n - u, n - r); });
  EXPECT_LE(std::abs(phi_ratio_roots(n, r).lower - static_cast<double>(phi_max)), 2.0);
  EXPECT_LE(std::abs(psi_ratio_roots(n, r).lower - static_cast<double>(psi_max)), 2.0);
  EXPECT_NEAR(beta_of(0.5) * n, 190.98, 0.01);
}

TEST(RatioRoots, ArgmaxProximityToBetaAndKappa) {
  for (double a : {0.3, 0.5, 0.6})
    for (long n : {100L, 200L, 500L, 1000L, 1500L, 2000L}) {
      const long r = std::lround(a * static_cast<double>(n));
      const long phi_max = scan_argmax(std::max(0L, 2 * r - n), std::min(r, n - r), [&](long u) {
        return ln_choose(r, u) + ln_choose(n - r, r - u) + ln_choose(n - u, r);
      });
      const long psi_max = scan_argmax(std::max(0L, 2 * r - n), r, [&](long u) {
        return ln_choose(r, u) + ln_choose(n - r, r - u) + ln_choose(n - u, n - r);
      });
      EXPECT_LE(std::abs(phi_max - std::lround(beta_of(a) * static_cast<double>(n))), 2) << a << " " << n;
      EXPECT_LE(std::abs(psi_max - std::lround(kappa_of(a) * static_cast<double>(n))), 2) << a << " " << n;
    }
}

TEST(AsymptoticProfile, SymmetricSeam) {
  const AsymptoticProfile p = asymptotic_profile(0.5);
  const double seam = (3 - std::sqrt(5.0)) / 4;
  ASSERT_TRUE(p.beta && p.xi);
  EXPECT_NEAR(*p.beta, seam, 1e-12);
  EXPECT_NEAR(p.kappa, seam, 1e-12);
  EXPECT_NEAR(*p.xi, p.theta, 1e-12);
  EXPECT_NEAR(*p.xi, 0.8325476691963903, 1e-12);  // mpmath
  EXPECT_EQ(p.mu, *p.xi);
}

TEST(AsymptoticProfile, TwoThirds) {
  const AsymptoticProfile p = asymptotic_profile(2.0 / 3.0);
  EXPECT_NEAR(p.e_coeff, 1.0 / 9.0, 1e-14);
  ASSERT_TRUE(p.beta && p.xi);
  EXPECT_NEAR(*p.beta, 1.0 / 3.0, 1e-12);
  EXPECT_GT(*p.xi, 0.0);
  EXPECT_LE(*p.xi, 1.0);
}

TEST(AsymptoticProfile, AlphaOneDegenerates) {
  const AsymptoticProfile p = asymptotic_profile(1.0);
  EXPECT_NEAR(p.kappa, 1.0, 1e-12);
  EXPECT_NEAR(p.theta, 1.0, 1e-12);
  EXPECT_FALSE(p.beta.has_value());
  EXPECT_THROW(asymptotic_profile(0.0), Error);
  EXPECT_THROW(asymptotic_profile(1.2), Error);
}

TEST(AsymptoticProfile, InvariantsOverTheUnitInterval) {
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    const AsymptoticProfile p = asymptotic_profile(a);
    ASSERT_GT(p.e_coeff, 0.0) << a;
    ASSERT_GE(p.kappa, std::max(0.0, 2 * a - 1) - 1e-12) << a;
    ASSERT_LE(p.kappa, a + 1e-12) << a;
    ASSERT_GT(p.theta, 0.0);
    ASSERT_LE(p.theta, 1.0 + 1e-12);
    ASSERT_EQ(p.beta.has_value(), a <= 2.0 / 3.0);
    if (p.beta) {
      ASSERT_GE(*p.beta, std::max(0.0, 2 * a - 1) - 1e-12) << a;
      ASSERT_LE(*p.beta, std::min(a, 1 - a) + 1e-12) << a;
      ASSERT_GT(*p.xi, 0.0);
      ASSERT_LE(*p.xi, 1.0 + 1e-12);
    }
    ASSERT_EQ(p.mu, a <= 0.5 ? *p.xi : p.theta);
  }
}

TEST(AsymptoticProfile, StirlingRateMatchesExactSums) {
  // (1/n) ln Sigma_2 -> ln theta; the K sqrt(n) prefactor costs O(log n / n).
  for (double a : {0.6, 0.75}) {
    const std::int64_t n = 200'000;
    const auto r = static_cast<std::int64_t>(a * n);
    const double rate = p_fixed_log(n, r).sigma2.ln() / static_cast<double>(n);
    EXPECT_NEAR(rate, log_theta(a), 1e-4) << a;
  }
  const std::int64_t n = 200'000;
  EXPECT_NEAR(p_fixed_log(n, n / 3).sigma1.ln() / static_cast<double>(n), log_xi(1.0 / 3.0), 1e-4);
}

TEST(Nu, PublishedAsymptoticCells) {
  // Published values: 9.00e396 and 1.93e5315.
  EXPECT_NEAR(nu_asymptotic(0.5, 10'000).log10(), 396 + std::log10(9.00), 0.01);
  EXPECT_NEAR(nu_asymptotic(2.0 / 3.0, 100'000).log10(), 5315 + std::log10(1.93), 0.01);
}

TEST(Nu, ExactSumClampsAboveOne) {
  EXPECT_TRUE(nu(Fraction(1, 1), 4, NuMode::ExactSum).is_zero());
  EXPECT_TRUE(nu_exact_sum(6, 3).is_zero());  // union bound 147/100
  EXPECT_THROW(nu(Fraction(1, 3), 10, NuMode::ExactSum), Error);
}

TEST(Nu, ExactSumRowCounts) {
  // sqrt(2 / (3 e p)) with p frozen above: 3.18 and 10.30.
  EXPECT_EQ(lll_row_count(20, 14), 3);
  EXPECT_EQ(lll_row_count(30, 20), 10);
  EXPECT_NEAR(nu_exact_sum(20, 14).value(), 3.1822870161619017, 1e-9);
}

TEST(Nu, ExactSumAboveTheExactRegimeUsesLogSpace) {
  const LogMagnitude big = nu_exact_sum(10'000, 5'000);
  // The exact sum keeps the polynomial prefactor the asymptotic form drops, so the two differ by O(log n).
  EXPECT_NEAR(big.log10(), nu_asymptotic(0.5, 10'000).log10(), 5.0);
  EXPECT_GT(big.log10(), zeta(0.5, 10'000).log10());
}
