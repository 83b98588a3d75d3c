#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "psq/arith.hpp"
#include "psq/counting.hpp"
#include "psq/error.hpp"

using namespace psq;
using namespace psq::counting;

namespace {

Real L(std::uint64_t p) { return std::log(static_cast<Real>(p)); }

// Brute-force reference independent of the sieve tables.
WeightedCount brute(std::uint64_t n, std::uint64_t k, std::uint64_t l, bool exclude_one) {
  WeightedCount w;
  for (std::uint64_t p = 2; p < n; ++p) {
    if (!arith::is_prime(p)) continue;
    const std::uint64_t eta = n - p;
    if (!arith::is_squarefree(eta) || std::gcd(eta, k) != 1 || eta % l != 0) continue;
    if (exclude_one && eta == 1) continue;
    w.value += L(p);
    ++w.terms;
  }
  return w;
}

const sieve::NumberTable& table() {
  static const sieve::NumberTable t(5000);
  return t;
}

}  // namespace

TEST(Counting, ThetaProgressionExamples) {
  EXPECT_NEAR(theta_progression(20, 3, 1).value, L(7) + L(13) + L(19), 1e-15);
  EXPECT_NEAR(theta_progression(10, 1, 0).value, L(2) + L(3) + L(5) + L(7), 1e-15);
  EXPECT_NEAR(theta_progression(10, 4, 2).value, L(2), 1e-15);
  EXPECT_EQ(theta_progression(10, 4, 2).terms, 1u);
  EXPECT_THROW(theta_progression(10, 0, 0), InvalidArgument);
}

TEST(Counting, RepresentationExamples) {
  EXPECT_NEAR(count_representations(4).value, L(2) + L(3), 1e-15);
  EXPECT_NEAR(count_representations(3).value, L(2), 1e-15);
  EXPECT_NEAR(count_coprime(10, 2).value, L(3) + L(5) + L(7), 1e-15);
  EXPECT_EQ(count_coprime(10, 2).terms, 3u);
  const auto r = count_coprime(38, 24738);
  EXPECT_EQ(r.terms, 1u);
  EXPECT_NEAR(r.value, L(37), 1e-15);
  EXPECT_THROW(count_coprime(10, 12), InvalidArgument);
}

TEST(Counting, NontrivialExamples) {
  EXPECT_EQ(count_coprime_nontrivial(38, 24738).terms, 0u);
  EXPECT_EQ(count_coprime_nontrivial(35, 33).terms, 0u);
  EXPECT_GT(count_coprime_nontrivial(40, 24738).terms, 0u);
  EXPECT_EQ(count_coprime_nontrivial(38, 12369).terms, 0u);
}

TEST(Counting, DivisibleExamples) {
  EXPECT_NEAR(count_coprime_divisible(15, 1, 2).value, L(5) + L(13), 1e-15);
  EXPECT_EQ(count_coprime_divisible(10, 3, 2).terms, 0u);
  EXPECT_THROW(count_coprime_divisible(10, 6, 2), InvalidArgument);
  for (std::uint64_t n = 3; n < 300; ++n)
    EXPECT_EQ(count_coprime_divisible(n, 6, 1).value, count_coprime(n, 6).value);
}

TEST(Counting, AgreesWithBruteForce) {
  for (std::uint64_t k : {1u, 2u, 3u, 6u, 35u, 210u})
    for (std::uint64_t l : {1u, 11u, 13u}) {
      if (std::gcd(k, l) != 1) continue;
      for (std::uint64_t n = 1; n <= 600; ++n) {
        const auto want = brute(n, k, l, false);
        const auto got = l == 1 ? count_coprime(n, k, table()) : count_coprime_divisible(n, k, l, table());
        ASSERT_EQ(got.terms, want.terms) << n << " " << k << " " << l;
        ASSERT_NEAR(got.value, want.value, 1e-12) << n;
      }
    }
  for (std::uint64_t n = 1; n <= 600; ++n)
    ASSERT_EQ(count_coprime_nontrivial(n, 30, table()).terms, brute(n, 30, 1, true).terms);
}

TEST(Counting, ResidueClassExamples) {
  Real want = 0;
  for (std::uint64_t a = 1; a <= 10; ++a)
    want += arith::mobius(a) * theta_progression(99, a * a, 100 % (a * a)).value;
  EXPECT_NEAR(residue_class_sum(100, 1, 1).value, want, 1e-12);
  // a in {3, 6} with (a, 3) = 3; the moduli are 3 a^2 / 3.
  const Real want_33 = arith::mobius(3) * theta_progression(49, 9, 50 % 9).value +
                       arith::mobius(6) * theta_progression(49, 36, 50 % 36).value;
  EXPECT_NEAR(residue_class_sum(50, 3, 3).value, want_33, 1e-12);
  EXPECT_NEAR(residue_class_sum(4, 1, 1).value, count_representations(4).value, 1e-15);
  EXPECT_THROW(residue_class_sum(50, 3, 2), InvalidArgument);
}

TEST(Counting, DecompositionMatchesDirect) {
  EXPECT_NEAR(count_coprime_by_inclusion_exclusion(10, 2).value, count_coprime(10, 2).value, 1e-12);
  EXPECT_NEAR(count_coprime_by_inclusion_exclusion(200, 6).value, count_coprime(200, 6).value, 1e-12);
  for (std::uint64_t n = 1; n <= 1000; ++n)
    ASSERT_NEAR(count_coprime_by_inclusion_exclusion(n, 1, table()).value,
                count_representations(n, table()).value, 1e-10);
}

TEST(Counting, Enumerate) {
  const auto w = enumerate_representations(10, 1, false, 10);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], (Representation{10, 3, 7}));
  EXPECT_EQ(w[2], (Representation{10, 7, 3}));
  const auto four = enumerate_representations(4, 1, true, 10);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ(four[0], (Representation{4, 2, 2}));
  EXPECT_TRUE(enumerate_representations(38, 24738, true, 10).empty());
  EXPECT_EQ(enumerate_representations(1000, 1, false, 5).size(), 5u);
  for (const auto& r : enumerate_representations(1000, 1, false, 1000)) EXPECT_NO_THROW(validate(r));
  EXPECT_THROW(validate(Representation{10, 4, 6}), InvalidArgument);
}

TEST(Counting, BracketWithReducedModulus) {
  // R_{k_n}(n) - log (k, n) <= R_k(n) <= R_{k_n}(n).
  for (std::uint64_t k = 1; k <= 210; ++k) {
    if (!arith::is_squarefree(k)) continue;
    for (std::uint64_t n = 3; n <= 400; ++n) {
      const std::uint64_t g = std::gcd(k, n);
      const Real rk = count_coprime(n, k, table()).value;
      const Real rkn = count_coprime(n, k / g, table()).value;
      ASSERT_LE(rk, rkn + 1e-12);
      ASSERT_GE(rk, rkn - L(g) - 1e-12);
    }
  }
}

TEST(Counting, NontrivialDropsAtMostOneTerm) {
  for (std::uint64_t k : {1u, 2u, 15u, 30030u})
    for (std::uint64_t n = 3; n <= 2000; ++n) {
      const Real r = count_coprime(n, k, table()).value;
      const Real rbar = count_coprime_nontrivial(n, k, table()).value;
      ASSERT_GE(rbar, r - L(n - 1) - 1e-12);
      ASSERT_GT(rbar, r - L(n));
    }
}

TEST(Counting, MonotoneInK) {
  // Adding a prime to k can only remove representations.
  for (std::uint64_t n = 3; n <= 1000; ++n) {
    EXPECT_LE(count_coprime(n, 6, table()).value, count_coprime(n, 2, table()).value + 1e-12);
    EXPECT_LE(count_coprime(n, 30, table()).value, count_coprime(n, 6, table()).value + 1e-12);
  }
}
