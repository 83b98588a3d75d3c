// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracle values below were computed independently (exact rationals
// and mpmath for the phi tails, numpy for the ratio band) and frozen here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "psq/analytic.hpp"
#include "psq/arith.hpp"
#include "psq/counting.hpp"
#include "psq/search.hpp"
#include "psq/sieve.hpp"
#include "support/synthetic_table.hpp"

using namespace psq;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED: " << what << ";";
    }
  }
};

Real rel(Real got, Real want) { return std::fabs(got - want) / std::fabs(want); }

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void ac1(Outcome& o) {
  const std::map<std::uint64_t, std::vector<std::uint64_t>> table = {
      {2, {2, 4}},
      {6, {2, 4, 6}},
      {30, {2, 4, 6, 8}},
      {210, {2, 4, 6, 8, 10, 12}},
      {2310, {2, 4, 6, 8, 10, 12, 14}},
      {30030, {2, 4, 6, 8, 10, 12, 14, 16, 18}}};
  for (const auto& [k, want] : table) {
    const auto got = search::exception_set(k, 100'000, search::Parity::EvenOnly, workers()).exceptions;
    o.require(got == want, "S_" + std::to_string(k));
  }
  o.detail << " six primorials, even n <= 1e5, exact set equality";
}

void ac2(Outcome& o) {
  const sieve::NumberTable table(1'000'000);
  auto zero = [&](std::uint64_t n, std::uint64_t k) {
    return counting::count_coprime_nontrivial(n, k, table).terms == 0;
  };
  o.require(zero(38, 24738), "R_bar_24738(38) = 0");
  o.require(zero(35, 33), "R_bar_33(35) = 0");
  o.require(zero(38, 12369), "R_bar_12369(38) = 0");

  const auto even = search::exception_set(24738, 1'000'000, search::Parity::EvenOnly, workers());
  o.require(!even.exceptions.empty() && even.exceptions.back() == 38, "no even exception of 24738 in [40, 1e6]");
  const auto all = search::exception_set(33, 1'000'000, search::Parity::All, workers());
  o.require(!all.exceptions.empty() && all.exceptions.back() == 35, "no exception of 33 in [36, 1e6]");
  for (std::uint64_t n : even.exceptions) o.require(zero(n, 24738), "recount " + std::to_string(n));
  for (std::uint64_t n : all.exceptions) o.require(zero(n, 33), "recount " + std::to_string(n));
  o.detail << " max S_24738 = " << even.exceptions.back() << ", max S_33 = " << all.exceptions.back()
           << " (scans to 1e6, each exception recounted)";
}

void ac3(Outcome& o) {
  const sieve::NumberTable table(2000);
  std::size_t pairs = 0;
  Real worst = 0;
  for (std::uint64_t k = 1; k <= 210; ++k) {
    if (!arith::is_squarefree(k)) continue;
    for (std::uint64_t n = 1; n <= 2000; ++n, ++pairs) {
      const Real direct = counting::count_coprime(n, k, table).value;
      const Real split = counting::count_coprime_by_inclusion_exclusion(n, k, table).value;
      const Real err = std::fabs(direct - split) / (1 + std::fabs(direct));
      worst = std::max(worst, err);
    }
  }
  o.require(worst <= 1e-9L, "relative disagreement above 1e-9");
  o.detail << " " << pairs << " (n, k) pairs, worst scaled error " << static_cast<double>(worst);
}

void ac4(Outcome& o) {
  search::VerifyOptions opt;
  opt.window_size = 100;
  opt.workers = workers();
  const auto r = search::verify_range(600, 1'000'000, opt);
  o.require(r.complete, "run incomplete");
  o.require(r.failures.empty(), std::to_string(r.failures.size()) + " failures");
  o.require(r.checked == 1'000'000 - 600 + 1, "coverage");
  o.detail << " 600 <= n <= 1e6, window 100, " << r.intervals_total << " intervals, "
           << r.failures.size() << " failures";
}

void ac5(Outcome& o) {
  const auto c = analytic::artin_constant(10);
  o.require(c.enclosure.contains(0.3739558136L), "enclosure misses 0.3739558136");
  o.require(c.enclosure.width() <= 1e-10L, "enclosure wider than 1e-10");
  o.require(std::floor(c.estimate * 1e5L) == 37395, "5-digit truncation");
  const auto z = analytic::zeta_ratio();
  o.require(z.agreement() <= 1e-12L, "zeta ratio routes disagree");
  o.require(z.euler_product.enclosure.contains(z.from_zeta_values.mid()), "zeta enclosure");
  char buf[160];
  std::snprintf(buf, sizeof buf, " c in [%.12Lf, %.12Lf], zeta routes differ by %.2Le", c.enclosure.lo(),
                c.enclosure.hi(), z.agreement());
  o.detail << buf;
}

void ac6(Outcome& o) {
  Real worst = 0;
  for (std::uint64_t k : {2u, 6u, 30u})
    for (std::uint64_t n : {10u, 36u, 100u}) {
      Real sum = 0;
      for (const auto& d : arith::squarefree_divisors(k))
        for (const auto& e : arith::squarefree_divisors(d.value))
          sum += d.mobius * analytic::residue_class_main_term(n, d.value, e.value);
      // A_k vanishes for even k, so compare against the size of the terms.
      const Real scale = analytic::residue_class_main_term(n, 1, 1);
      worst = std::max(worst, std::fabs(sum - analytic::coprime_main_term(n, k)) / scale);
    }
  o.require(worst <= 1e-12L, "collapsing identity");

  const struct {
    std::uint64_t d, e;
    Real tail;
  } oracle[] = {{1, 1, 0.00318066099791004156547L},
                {3, 1, 0.00181399208905559769649L},
                {3, 3, 0.00108984986585692567143L},
                {15, 3, 0.000420610718201014569051L}};
  Real worst_tail = 0;
  for (const auto& t : oracle)
    worst_tail = std::max(worst_tail, rel(analytic::tail_phi_sum(t.d, t.e, 1e5L).mid(), t.tail));
  o.require(worst_tail <= 1e-12L, "tail_phi_sum");
  o.detail << " collapsing error " << static_cast<double>(worst) << ", tail error "
           << static_cast<double>(worst_tail);
}

void ac7(Outcome& o) {
  using namespace analytic;
  const Real c = kArtinLiteral;
  const Real tail11 = 0.00318066099791004156547L;  // N = 1e5
  struct Case {
    BoundParity parity;
    Real n;
    std::uint64_t k;
    Real C;
    Real c1;
    Real main;
  } cases[] = {{BoundParity::Even, 4e18L, 2, 0.2L, 8.6315e-7L, 2 * c},
               {BoundParity::Odd, 8e9L, 1, 0.37L, 9.5913e-4L, c},
               {BoundParity::Odd, 1e25L, 1, 0.2L, 6.3417e-9L, c}};
  const auto bundled = CThetaTable::bundled();
  Real worst = 0;
  for (const auto& cs : cases) {
    const auto params = BoundParams::make(cs.C, 1e5L, cs.n);  // conservative, as printed
    const auto r = cs.parity == BoundParity::Even ? evaluate_even_lower_bound(cs.n, cs.k, params, bundled)
                                                  : evaluate_odd_lower_bound(cs.n, cs.k, params, bundled);
    o.require(r.verdict == Verdict::InsufficientTable && !r.total, "bundled data must not give a verdict");
    o.require(std::string(to_string(r.verdict)) == "insufficient-table", "verdict string");
    const Real logn = std::log(cs.n);
    const Real hand[] = {cs.c1 / logn, cs.main, (1 + 2 * cs.C) / (1 - 2 * cs.C) * tail11,
                         logn * (std::pow(cs.n, -cs.C) + std::pow(cs.n, -2 * cs.C)),
                         (std::log(static_cast<Real>(cs.k)) + logn) / cs.n};
    const Real got[] = {r.reported_penalty(r.explicit_unit_term), r.reported_main(),
                        r.reported_penalty(r.sieve_tail_group), r.reported_penalty(r.large_a_group),
                        r.reported_penalty(r.log_group)};
    for (int i = 0; i < 5; ++i) worst = std::max(worst, rel(got[i], hand[i]));
  }
  o.require(worst <= 1e-12L, "m = 1 components differ from hand formulas");

  // Positivity needs m >= 3 constants; a synthetic table (1/840 for every
  // requested modulus) stands in for a real one.
  const auto odd = BoundParams::make(0.2L, 1e5L, 1e25L);
  const auto odd_table = psq::test_support::synthetic_table(
      psq::test_support::missing_for(BoundParity::Odd, 1e25L, 1, odd), 1e9L, 1.0L / 840);
  const auto at25 = evaluate_odd_lower_bound(1e25L, 1, odd, odd_table);
  o.require(at25.verdict == Verdict::Positive, "synthetic positivity at 1e25");

  search::CertificateInputs in;
  in.k = 2;
  in.parity = search::Parity::EvenOnly;
  in.scan_limit = 10'000;
  in.source = search::ThresholdSource::GoldbachExternal;
  in.analytic_verdict = Verdict::InsufficientTable;
  const auto cert = search::largest_exception_certificate(in);
  bool stated = false;
  for (const auto& note : cert.notes) stated |= note.find("not reproducible") != std::string::npos;
  o.require(stated && !cert.gap_free, "certificate must state the missing data");

  o.detail << " m = 1 components within " << static_cast<double>(worst)
           << " of hand formulas; bundled data gives insufficient-table; synthetic 1/840 table gives "
           << to_string(at25.verdict) << " at 1e25 (lower bound " << static_cast<double>(*at25.reported_total())
           << ")";
}

void ac8(Outcome& o) {
  const auto b = analytic::chen_factor_bound();
  o.require(b.below_e33 && static_cast<Real>(b.bound) < std::exp(33.0L), "bound not below e^33");
  o.detail << " K <= " << b.bound << " < e^33 = " << static_cast<double>(std::exp(33.0L));
}

void ac9(Outcome& o) {
  const Real lo = 0.9965L, hi = 1.0010L;
  const std::uint64_t ns[] = {100'000, 300'000, 1'000'000, 3'000'000, 10'000'000};
  const std::map<std::uint64_t, std::vector<Real>> oracle = {
      {1, {1.0007986397182678L, 0.9968672325793971L, 0.9991148529608335L, 0.9993756765701406L,
           0.9995640110719393L}},
      {2, {1.00078983533821L, 0.99686478691827L, 0.9991148529608335L, 0.9993754320040282L,
           0.999563923028139L}},
      {6, {1.0006060430765495L, 0.99686478691827L, 0.9989001949536127L, 0.9993754320040282L,
           0.9997469262933772L}}};
  const sieve::NumberTable table(10'000'000);
  Real min_ratio = 2, max_ratio = 0, worst = 0;
  for (const auto& [k, want] : oracle)
    for (int i = 0; i < 5; ++i) {
      const std::uint64_t n = ns[i];
      const Real ratio = counting::count_coprime(n, k, table).value /
                         (static_cast<Real>(n) * analytic::asymptotic_main_term(n, k));
      min_ratio = std::min(min_ratio, ratio);
      max_ratio = std::max(max_ratio, ratio);
      worst = std::max(worst, rel(ratio, want[i]));
      o.require(ratio >= lo && ratio <= hi, "k = " + std::to_string(k) + ", n = " + std::to_string(n));
    }
  o.require(worst <= 1e-9L, "ratios drifted from the frozen oracle");
  o.detail << " ratios in [" << static_cast<double>(min_ratio) << ", " << static_cast<double>(max_ratio)
           << "] within band [0.9965, 1.0010]; oracle drift " << static_cast<double>(worst);
}

void ac10(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> start(1, 1ull << 40);
  for (int block = 0; block < 10; ++block) {
    const std::uint64_t a = start(rng), b = a + 999;
    const auto primes = sieve::sieve_primes(a, b);
    const auto mu = sieve::sieve_mobius(a, b);
    for (std::uint64_t n = a; n <= b; ++n) {
      o.require(primes.test(n) == arith::is_prime(n), "prime bit " + std::to_string(n));
      o.require(mu.mobius(n) == arith::mobius(n), "mobius " + std::to_string(n));
    }
  }

  const sieve::NumberTable table(10'000);
  for (std::uint64_t k = 1; k <= 210; ++k) {
    if (!arith::is_squarefree(k)) continue;
    for (std::uint64_t n = 1; n <= 1000; ++n) {
      const std::uint64_t g = std::gcd(k, n);
      const Real rk = counting::count_coprime(n, k, table).value;
      const Real rkn = counting::count_coprime(n, k / g, table).value;
      // The lower side is attained, e.g. k = 2, n = 4.
      o.require(rk <= rkn + 1e-12L && rk >= rkn - std::log(static_cast<Real>(g)) - 1e-12L,
                "bracket at n = " + std::to_string(n) + ", k = " + std::to_string(k));
      if (n < 3) continue;
      const Real rbar = counting::count_coprime_nontrivial(n, k, table).value;
      // Equality when n - 1 is prime.
      o.require(rbar >= rk - std::log(static_cast<Real>(n - 1)) - 1e-12L, "R_bar vs log(n - 1)");
      o.require(rbar > rk - std::log(static_cast<Real>(n)), "R_bar vs log n");
    }
  }

  std::size_t subsets = 0;
  for (std::uint64_t k = 1; k <= 100; k += 2) {
    if (!arith::is_squarefree(k)) continue;
    const auto s = search::exception_set(k, 10'000, search::Parity::EvenOnly).exceptions;
    const auto s2 = search::exception_set(2 * k, 10'000, search::Parity::EvenOnly).exceptions;
    o.require(std::includes(s2.begin(), s2.end(), s.begin(), s.end()), "S_k in S_2k for k = " + std::to_string(k));
    ++subsets;
  }
  o.detail << " 1e4 sieve samples, bracket and R_bar inequalities for n <= 1e3 and squarefree k <= 210, "
           << subsets << " subset checks";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1 Table 1 exception sets", ac1},
      {"AC2 named exceptions", ac2},
      {"AC3 decomposition equivalence", ac3},
      {"AC4 three-representation scan", ac4},
      {"AC5 Artin constant and zeta ratio", ac5},
      {"AC6 main-term algebra and phi tails", ac6},
      {"AC7 bound components and table handling", ac7},
      {"AC8 prime-factor count bound", ac8},
      {"AC9 asymptotic ratio band", ac9},
      {"AC10 property suites", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::printf("[%s] %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str(),
                dt.count());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
