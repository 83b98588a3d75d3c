#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "psq/analytic.hpp"
#include "psq/error.hpp"
#include "psq/sieve.hpp"

namespace psq::analytic {
namespace {

constexpr Real kUnitRoundoff = std::numeric_limits<Real>::epsilon() / 2;
constexpr Real kPiUpperRatio = 1.25506L;  // pi(x) < 1.25506 x / log x, x > 1 (Rosser-Schoenfeld)

// Relative error bound gamma_k = k u / (1 - k u) for k roundings.
Real accumulated_error(std::uint64_t roundings) {
  const Real t = static_cast<Real>(roundings) * kUnitRoundoff;
  return round_up(t / (1 - t), 2);
}

struct PrimeProduct {
  Real product = 1;
  std::uint64_t count = 0;
};

// prod over p <= limit of (1 + sign / (p^2 - p)); three roundings per factor.
PrimeProduct euler_product(std::uint64_t limit, int sign) {
  PrimeProduct out;
  sieve::for_each_prime(2, limit, [&](std::uint64_t p) {
    const Real x = 1 / static_cast<Real>(p * (p - 1));
    out.product *= sign > 0 ? 1 + x : 1 - x;
    ++out.count;
  });
  return out;
}

Interval enclose_product(const PrimeProduct& run) {
  const Real g = accumulated_error(3 * run.count + 3);
  return Interval(run.product) * Interval(1 - g, 1 + g);
}

// Upper bound for sum over p > P of 1/(p(p-1)), by partial summation against
// pi(t) < 1.25506 t / log t and the exact count pi(P).
Real prime_tail_bound(std::uint64_t P, std::uint64_t pi_P) {
  const Interval p = Interval::exact(P), pm1 = Interval::exact(P - 1);
  const Interval upper = Interval::rounded(kPiUpperRatio) * Interval(2) / (pm1 * log(p));
  const Interval boundary = Interval::exact(pi_P) / (p * pm1);
  return std::max<Real>(0, (upper - boundary).hi());
}

// Integral of dt / (t (t-1) log t) over [P, inf): the tail sum with the
// prime density replaced by 1/log t. An estimate, not a bound.
Real prime_tail_estimate(std::uint64_t P) {
  const Real lp = std::log(static_cast<Real>(P));
  const Real pr = static_cast<Real>(P);
  boost::math::quadrature::tanh_sinh<Real> integrator;
  auto f = [&](Real u) -> Real {
    if (u <= 0) return 0;
    return 1 / (pr * (1 - u / pr) * (lp - std::log(u)));
  };
  return integrator.integrate(f, Real(0), Real(1));
}

Real predicted_artin_width(Real P) {
  const Real pi_lower = P / std::log(P);  // pi(x) > x / log x for x >= 17
  const Real tail = (2 * kPiUpperRatio - 1) / ((P - 1) * std::log(P));
  return 0.3740L * tail + 2 * 0.3740L * accumulated_error(static_cast<std::uint64_t>(3 * 1.3L * pi_lower));
}

}  // namespace

Interval artin_literal() { return Interval(kArtinLiteral, 0.3739558137L); }

Real artin_partial_product(std::uint64_t limit) {
  if (limit < 2) return 1;
  return euler_product(limit, -1).product;
}

CertifiedValue artin_constant_at(std::uint64_t truncation) {
  if (truncation < 17) throw InvalidArgument("artin_constant_at: truncation must be >= 17");
  const PrimeProduct run = euler_product(truncation, -1);
  const Real tail = prime_tail_bound(truncation, run.count);
  // prod over p > P of (1 - x_p) lies in [1 - sum x_p, 1].
  const Interval enclosure = enclose_product(run) * Interval(round_down(1 - tail), 1);
  const Real estimate = run.product * (1 - prime_tail_estimate(truncation));
  return {estimate, enclosure, truncation, run.count};
}

CertifiedValue artin_constant(unsigned target_digits, std::uint64_t max_truncation) {
  if (target_digits == 0) throw InvalidArgument("artin_constant: target_digits must be >= 1");
  if (target_digits > 18)
    throw ResourceError("artin_constant: " + std::to_string(target_digits) +
                        " digits exceed long double precision");
  const Real target = std::pow(Real(10), -static_cast<Real>(target_digits));
  Real P = 1 << 16;
  while (predicted_artin_width(P) > 0.9L * target) {
    P *= 1.25L;
    if (P > static_cast<Real>(max_truncation))
      throw ResourceError("artin_constant: " + std::to_string(target_digits) +
                          " digits need primes beyond the configured truncation " +
                          std::to_string(max_truncation));
  }
  CertifiedValue value = artin_constant_at(static_cast<std::uint64_t>(P));
  if (value.enclosure.width() > target)
    throw ResourceError("artin_constant: enclosure wider than requested at truncation " +
                        std::to_string(value.truncation));
  return value;
}

Interval zeta3() {
  // zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k, k)).
  constexpr int kTerms = 30;
  Interval sum(0);
  unsigned __int128 binom = 1;  // binom(2k, k)
  Interval next_term(0);
  for (int k = 1; k <= kTerms + 1; ++k) {
    binom = binom * (2 * k) * (2 * k - 1) / (static_cast<unsigned>(k) * k);
    const Interval kk = Interval::exact(static_cast<std::uint64_t>(k));
    const Interval term = Interval(1) / (kk * kk * kk * Interval::exact(static_cast<std::uint64_t>(binom)));
    if (k > kTerms) {
      next_term = term;
      break;
    }
    sum = (k % 2) ? sum + term : sum - term;
  }
  // Alternating series with decreasing terms; kTerms is even, so the
  // remainder lies in [0, next_term].
  sum += Interval(0, next_term.hi());
  return sum * Interval(2.5L);
}

Interval zeta_ratio_closed_form() {
  // zeta(2) zeta(3) / zeta(6) = (945 / 6) zeta(3) / pi^4.
  const Interval pi = pi_interval();
  const Interval pi2 = pi * pi;
  return Interval(157.5L) * zeta3() / (pi2 * pi2);
}

Real ZetaRatio::agreement() const {
  return std::fabs(euler_product.estimate - from_zeta_values.mid());
}

ZetaRatio zeta_ratio(std::uint64_t truncation) {
  if (truncation < 17) throw InvalidArgument("zeta_ratio: truncation must be >= 17");
  const PrimeProduct run = euler_product(truncation, +1);
  const Real tail = prime_tail_bound(truncation, run.count);
  // prod over p > P of (1 + x_p) lies in [1, exp(sum x_p)].
  const Interval enclosure = enclose_product(run) * Interval(1, exp(Interval(tail)).hi());
  const Real estimate = run.product * std::exp(prime_tail_estimate(truncation));
  return {zeta_ratio_closed_form(), {estimate, enclosure, truncation, run.count}};
}

AnalyticConstants AnalyticConstants::standard() {
  return {artin_literal(), zeta_ratio_closed_form(), 0};
}

AnalyticConstants AnalyticConstants::computed(std::uint64_t truncation) {
  return {artin_constant_at(truncation).enclosure, analytic::zeta_ratio(truncation).euler_product.enclosure,
          truncation};
}

}  // namespace psq::analytic
