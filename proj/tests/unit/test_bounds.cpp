#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "psq/analytic.hpp"
#include "psq/arith.hpp"
#include "psq/error.hpp"
#include "psq/sieve.hpp"
#include "support/synthetic_table.hpp"

using namespace psq;
using namespace psq::analytic;

namespace {

constexpr Real c = kArtinLiteral;

Real rel(Real got, Real want) { return std::fabs(got - want) / std::fabs(want); }

// mu^2(a) / phi(a^2) = 1 / (a phi(a)) for squarefree a.
Real finite_by_hand(std::uint64_t d, std::uint64_t e, Real N) {
  Real s = 0;
  for (std::uint64_t a = e; static_cast<Real>(a * a * d) <= N * e; a += e)
    if (std::gcd(a, d) == e && arith::is_squarefree(a))
      s += 1 / (static_cast<Real>(a) * static_cast<Real>(arith::euler_phi(a)));
  return s / static_cast<Real>(arith::euler_phi(d / e));
}

}  // namespace

TEST(MainTerms, ResidueClassExamples) {
  const Real singular10 = 2 * (20.0L / 19);
  EXPECT_LT(rel(residue_class_main_term(10, 2, 1), c * 10 * singular10 * 2), 1e-15L);
  EXPECT_LT(rel(residue_class_main_term(10, 2, 2), -c * 10 * singular10), 1e-15L);
  EXPECT_LT(rel(residue_class_main_term(10, 1, 1), c * 10 * singular10), 1e-15L);
  EXPECT_THROW(residue_class_main_term(10, 4, 2), InvalidArgument);
  EXPECT_THROW(residue_class_main_term(10, 6, 4), InvalidArgument);
}

TEST(MainTerms, Factors) {
  EXPECT_EQ(coprimality_factor(2).mid(), 0);
  EXPECT_EQ(coprimality_factor(30).mid(), 0);
  EXPECT_TRUE(coprimality_factor(3).contains(0.6L));
  EXPECT_TRUE(divisibility_factor(2).contains(1));
  EXPECT_TRUE(divisibility_factor(3).contains(0.4L));
  EXPECT_TRUE(singular_factor(1).contains(1));
  EXPECT_TRUE(singular_factor(12).contains(2 * (1 + 1.0L / 5)));
}

TEST(MainTerms, CoprimeAndDivisible) {
  for (std::uint64_t n : {10u, 35u, 1001u}) {
    EXPECT_EQ(divisible_main_term(n, 1, 1), coprime_main_term(n, 1));
    EXPECT_LT(rel(divisible_main_term(n, 1, 2), coprime_main_term(n, 1)), 1e-15L);
    EXPECT_LT(rel(divisible_main_term(n, 1, 3), coprime_main_term(n, 1) * 0.4L), 1e-15L);
  }
  EXPECT_THROW(divisible_main_term(10, 6, 3), InvalidArgument);
}

TEST(MainTerms, CollapsingIdentity) {
  // A_k = sum over d | k of mu(d) sum over e | d of A_{d,e}.
  for (std::uint64_t k : {2u, 6u, 30u, 15u})
    for (std::uint64_t n : {10u, 36u, 100u}) {
      Real sum = 0;
      for (const auto& d : arith::squarefree_divisors(k))
        for (const auto& e : arith::squarefree_divisors(d.value))
          sum += d.mobius * residue_class_main_term(n, d.value, e.value);
      EXPECT_NEAR(sum, coprime_main_term(n, k), 1e-14L * n) << k << " " << n;
    }
}

TEST(MainTerms, Asymptotic) {
  for (std::uint64_t n : {35u, 1001u, 999'999u})
    EXPECT_LT(rel(asymptotic_main_term(n, 1), coprime_main_term(n, 1) / n), 1e-15L);
  EXPECT_LT(rel(asymptotic_main_term(49, 3), coprime_main_term(49, 3) / 49), 1e-15L);
  EXPECT_LT(rel(asymptotic_main_term(35, 3, 2), coprime_main_term(35, 3) * 1 / 35), 1e-15L);
  // k = 6 along even n reduces to k_n = 3.
  EXPECT_LT(rel(asymptotic_main_term(100, 6), coprime_main_term(100, 3) / 100), 1e-15L);
  EXPECT_THROW(asymptotic_main_term(35, 2), InvalidArgument);
  EXPECT_THROW(asymptotic_main_term(10, 1, 5), InvalidArgument);
  EXPECT_THROW(asymptotic_main_term(35, 3, 3), InvalidArgument);
}

TEST(PhiSums, TailAgainstOracle) {
  // Exact rational finite sums subtracted from 40-digit totals.
  const struct {
    std::uint64_t d, e;
    Real tail;
  } cases[] = {{1, 1, 0.00318066099791004156547L},
               {3, 1, 0.00181399208905559769649L},
               {3, 3, 0.00108984986585692567143L},
               {15, 3, 0.000420610718201014569051L},
               {6, 2, 0.000888583644519164819619L},
               {30, 5, 0.000246303409034560521148L}};
  for (const auto& k : cases) {
    const Interval t = tail_phi_sum(k.d, k.e, 1e5L);
    EXPECT_LT(rel(t.mid(), k.tail), 1e-12L) << k.d << " " << k.e;
    EXPECT_TRUE(t.contains(k.tail) || rel(t.mid(), k.tail) < 1e-15L);
  }
}

TEST(PhiSums, FiniteAgainstHand) {
  for (std::uint64_t d : {1u, 3u, 15u, 30u})
    for (const auto& e : arith::squarefree_divisors(d))
      EXPECT_LT(rel(finite_phi_sum(d, e.value, 1e5L).mid(), finite_by_hand(d, e.value, 1e5L)), 1e-15L);
}

TEST(PhiSums, Limits) {
  EXPECT_TRUE(total_phi_sum(1, 1).contains(zeta_ratio_closed_form().mid()));
  EXPECT_LT(tail_phi_sum(1, 1, 1e14L).mid(), 1e-6L);
  EXPECT_GE(tail_phi_sum(1, 1, 1e14L).lo(), 0);
  EXPECT_LT(tail_phi_sum(1, 1, 0.5L).mid() - zeta_ratio_closed_form().mid(), 1e-18L);
  // Splitting every a by (a, d) recovers the full sum.
  for (std::uint64_t d : {3u, 5u, 15u, 30u}) {
    Real sum = 0;
    for (const auto& e : arith::squarefree_divisors(d))
      sum += total_phi_sum(d, e.value).mid() * static_cast<Real>(arith::euler_phi(d / e.value));
    EXPECT_LT(rel(sum, total_phi_sum(1, 1).mid()), 1e-15L);
  }
}

TEST(BoundParams, Validation) {
  EXPECT_THROW(BoundParams::make(0.5L, 1e5L, 1e30L), InvalidArgument);
  EXPECT_THROW(BoundParams::make(0, 1e5L, 1e30L), InvalidArgument);
  EXPECT_THROW(BoundParams::make(0.2L, 0, 1e30L), InvalidArgument);
  EXPECT_THROW(BoundParams::make(0.2L, 1e5L, 1e12L), InvalidArgument);
  EXPECT_NO_THROW(BoundParams::make(0.2L, 1e5L, 4e18L));
  const auto p = BoundParams::minimal(0.2L, 1e5L);
  EXPECT_GT(p.n0, 3.16e12L);
  EXPECT_LT(p.n0, 3.17e12L);
  EXPECT_THROW(BoundParams::make(0.2L, 1e5L, p.n0 - 1e4L), InvalidArgument);
}

TEST(ErrorEnvelope, HandComputedWithNegligibleConstants) {
  const Real n = 1e12L, C = 0.2L, N = 1e4L;
  const auto params = BoundParams::make(C, N, 1e11L, Rounding::Nearest);
  const auto missing = error_terms(n, 3, 1, params, CThetaTable::bundled()).missing_moduli;
  ASSERT_FALSE(missing.empty());
  const auto table = psq::test_support::synthetic_table(missing, 1, 1e-40L);

  const Real total = 3.0L / 7 * 1.94359643682075920505L;
  const Real tail = total - finite_by_hand(3, 1, N);
  const Real logn = std::log(n);
  const Real want = n * (1 + 2 * C) / (1 - 2 * C) * tail +
                    n * logn * (std::pow(n, -0.5L) * (1 - 1.0L / 3) + std::pow(n, -C) / std::sqrt(3.0L) +
                                std::pow(n, -2 * C));
  EXPECT_LT(rel(error_bound_de(n, 3, 1, params, table), want), 1e-12L);
  const auto conservative = BoundParams::make(C, N, 1e11L);
  EXPECT_GE(error_bound_de(n, 3, 1, conservative, table), want);
}

TEST(ErrorEnvelope, MonotoneOnSyntheticTable) {
  const auto table = psq::test_support::synthetic_table({1, 4, 9, 25, 36, 49, 100}, 1, 0.01L);
  const auto params = BoundParams::minimal(0.2L, 100, Rounding::Nearest);
  Real prev_scaled = INFINITY, prev = 0;
  for (Real n = 1e6L; n <= 1e15L; n *= 3) {
    const Real n_int = std::floor(n);
    const Real e = error_bound_de(n_int, 1, 1, params, table);
    EXPECT_LT(e / n_int, prev_scaled) << n_int;
    EXPECT_GT(e, prev) << n_int;
    prev_scaled = e / n_int;
    prev = e;
  }
}

TEST(ErrorEnvelope, MissingModuliReported) {
  const auto params = BoundParams::make(0.2L, 1e5L, 4e18L);
  try {
    error_bound_de(4e18L, 1, 1, params, CThetaTable::bundled());
    FAIL();
  } catch (const MissingDataError& e) {
    // Squarefree a in [2, 316] give moduli a^2.
    EXPECT_EQ(e.moduli().size(), psq::sieve::sieve_squarefree(2, 316).count());
    EXPECT_EQ(e.moduli().front(), 4u);
  }
  EXPECT_THROW(error_terms(1e12L, 1, 1, params, CThetaTable::bundled()), InvalidArgument);
}

TEST(ErrorEnvelope, DivisorEnumerationForSix) {
  // The even bound for k = 6 sums over d | 3.
  const auto params = BoundParams::make(0.2L, 1e5L, 4e18L);
  std::set<std::uint64_t> want;
  for (std::uint64_t a = 2; a <= 316; ++a)
    if (arith::is_squarefree(a)) want.insert(a * a);
  for (std::uint64_t a = 1; 3 * a * a <= 100000; ++a)
    if (a % 3 != 0 && arith::is_squarefree(a)) want.insert(3 * a * a);
  const auto got = psq::test_support::missing_for(BoundParity::Even, 4e18L, 6, params);
  EXPECT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), want);

  const auto k1 = error_terms_k(4e18L, 1, params, psq::test_support::synthetic_table(got, 1, 1e-3L));
  const auto d11 = error_terms(4e18L, 1, 1, params, psq::test_support::synthetic_table(got, 1, 1e-3L));
  EXPECT_EQ(k1.total().mid(), d11.total().mid());
}

TEST(LowerBound, EvenPositiveWithSyntheticTable) {
  const auto params = BoundParams::make(0.2L, 1e5L, 4e18L);
  for (std::uint64_t k : {2u, 6u, 30u, 2310u}) {
    const auto missing = psq::test_support::missing_for(BoundParity::Even, 4e18L, k, params);
    const auto table = psq::test_support::synthetic_table(missing, 1e9L, 1.0L / 840);
    const auto r = evaluate_even_lower_bound(4e18L, k, params, table);
    EXPECT_EQ(r.verdict, Verdict::Positive) << k;
    EXPECT_GT(even_lower_bound(4e18L, k, params, table), 0);
    EXPECT_EQ(r.total->lo(), (r.main_term - r.explicit_group - r.sieve_tail_group - r.large_a_group - r.log_group).lo());
  }
}

TEST(LowerBound, BundledTableIsInsufficient) {
  const auto params = BoundParams::make(0.2L, 1e5L, 4e18L);
  const auto r = evaluate_even_lower_bound(4e18L, 2, params, CThetaTable::bundled());
  EXPECT_EQ(r.verdict, Verdict::InsufficientTable);
  EXPECT_FALSE(r.total.has_value());
  EXPECT_THROW(even_lower_bound(4e18L, 2, params, CThetaTable::bundled()), MissingDataError);
  // With N below 4 only a = 1 is explicit, so the bundled rows suffice.
  const auto small_n = BoundParams::make(0.2L, 3, 4e18L);
  EXPECT_NE(evaluate_even_lower_bound(4e18L, 2, small_n, CThetaTable::bundled()).verdict,
            Verdict::InsufficientTable);
}

TEST(LowerBound, PenaltiesVanish) {
  const auto params = BoundParams::make(0.2L, 1e5L, 4e18L, Rounding::Nearest);
  const auto missing = psq::test_support::missing_for(BoundParity::Even, 4e18L, 2, params);
  const auto table = psq::test_support::synthetic_table(missing, 1e9L, 1.0L / 840);
  Real prev = 0;
  for (Real n : {4e18L, 1e22L, 1e26L, 1e30L, 1e40L}) {
    const auto r = evaluate_even_lower_bound(n, 2, params, table);
    EXPECT_GT(*r.reported_total(), prev);
    prev = *r.reported_total();
  }
  EXPECT_NEAR(prev, 2 * c, 0.02L);
}

TEST(LowerBound, InputValidation) {
  const auto params = BoundParams::make(0.2L, 1e5L, 4e18L);
  const auto table = CThetaTable::bundled();
  EXPECT_THROW(evaluate_even_lower_bound(4e18L, 3, params, table), InvalidArgument);
  EXPECT_THROW(evaluate_even_lower_bound(4e18L, 12, params, table), InvalidArgument);
  EXPECT_THROW(evaluate_even_lower_bound(4e18L + 1, 2, params, table), InvalidArgument);
  EXPECT_THROW(evaluate_even_lower_bound(1e18L, 2, params, table), InvalidArgument);
  EXPECT_THROW(evaluate_odd_lower_bound(1e10L, 2, params, table), InvalidArgument);
  EXPECT_THROW(evaluate_odd_lower_bound(1e9L, 3, params, table), InvalidArgument);
}

TEST(LowerBound, OddUsesAllDivisors) {
  const auto params = BoundParams::make(0.37L, 1e5L, 8e9L);
  const auto missing = psq::test_support::missing_for(BoundParity::Odd, 8e9L, 3, params);
  const auto table = psq::test_support::synthetic_table(missing, 1e9L, 1.0L / 840);
  const auto r = evaluate_odd_lower_bound(8e9L, 3, params, table);
  EXPECT_TRUE(r.main_term.contains(c * 0.6L));
  const auto terms = error_terms_k(8e9L, 3, params, table);
  EXPECT_EQ(r.explicit_group.hi(), terms.explicit_part.hi());
}

TEST(Chebyshev, ThetaRatioBelowSwitchPoint) {
  const auto primes = psq::sieve::sieve_primes(1, 600).members();
  Real theta = 0;
  std::size_t i = 0;
  for (std::uint64_t m = 2; m < 519; ++m) {
    while (i < primes.size() && primes[i] <= m) theta += std::log(static_cast<Real>(primes[i++]));
    // theta is constant on [m, m + 1).
    if (m >= 101) EXPECT_GT(theta, 0.84L * (m + 1)) << m;
  }
  for (Real x = 519; x < 1e7L; x *= 1.7L) EXPECT_GE(1 - 1 / std::log(x), 0.84L);
}

TEST(Chebyshev, ChenFactorBound) {
  const auto b = chen_factor_bound();
  EXPECT_TRUE(b.below_e33);
  EXPECT_LT(static_cast<Real>(b.bound), std::exp(33.0L));
  EXPECT_GT(b.bound, 184'000'000'000'000u);
  EXPECT_LT(b.bound, 185'000'000'000'000u);
  EXPECT_TRUE(b.theta13.contains(std::log(30030.0L)));
  ChebyshevConstants loose;
  loose.pi_ratio = 1.6L;
  EXPECT_FALSE(chen_factor_bound(loose).below_e33);
}
