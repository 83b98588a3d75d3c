#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "psq/analytic.hpp"
#include "psq/arith.hpp"
#include "psq/error.hpp"

namespace psq::analytic {
namespace {

void require_divides(std::uint64_t e, std::uint64_t d, const char* op) {
  if (e == 0 || d % e != 0)
    throw InvalidArgument(std::string(op) + ": e = " + std::to_string(e) +
                          " does not divide d = " + std::to_string(d));
}

void require_integer(Real n, Real minimum, const char* op) {
  if (!(n >= minimum) || std::floor(n) != n) {
    std::ostringstream msg;
    msg << op << ": n must be an integer >= " << minimum;
    throw InvalidArgument(msg.str());
  }
}

Real pick(const Interval& x, Rounding rounding, bool upward) {
  if (rounding == Rounding::Nearest) return x.mid();
  return upward ? x.hi() : x.lo();
}

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Artin's constant as a point, for the round-to-nearest main terms.
Interval main_term_scale(std::uint64_t n) {
  return Interval(kArtinLiteral) * Interval::exact(n) * singular_factor(n);
}

}  // namespace

const char* to_string(Rounding r) {
  return r == Rounding::Nearest ? "nearest" : "conservative-directed";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "yes";
    case Verdict::NotPositive: return "no";
    case Verdict::InsufficientTable: return "insufficient-table";
  }
  return "unknown";
}

Interval singular_factor(std::uint64_t n) {
  Interval product(1);
  for (std::uint64_t p : arith::prime_divisors(n)) {
    const Interval pp = Interval::exact(p);
    product *= Interval(1) + Interval(1) / (pp * pp - pp - Interval(1));
  }
  return product;
}

Interval coprimality_factor(std::uint64_t k) {
  arith::require_squarefree(k, "coprimality_factor");
  Interval product(1);
  for (std::uint64_t q : arith::prime_divisors(k)) {
    if (q == 2) return Interval(0);
    const Interval qq = Interval::exact(q);
    product *= Interval(1) - (qq - Interval(1)) / (qq * qq - qq - Interval(1));
  }
  return product;
}

Interval divisibility_factor(std::uint64_t l) {
  arith::require_squarefree(l, "divisibility_factor");
  Interval product(1);
  for (std::uint64_t r : arith::prime_divisors(l)) {
    const Interval rr = Interval::exact(r);
    product *= (rr - Interval(1)) / (rr * rr - rr - Interval(1));
  }
  return product;
}

Real residue_class_main_term(std::uint64_t n, std::uint64_t d, std::uint64_t e) {
  arith::require_squarefree(d, "residue_class_main_term");
  require_divides(e, d, "residue_class_main_term");
  if (n == 0) throw InvalidArgument("residue_class_main_term: n must be >= 1");
  Interval denominator(1);
  for (std::uint64_t q : arith::prime_divisors(d)) {
    const Interval qq = Interval::exact(q);
    denominator *= qq * qq - qq - Interval(1);
  }
  const Interval value = main_term_scale(n) * Interval(arith::mobius(e)) *
                         Interval::exact(d / e) / denominator;
  return value.mid();
}

Real coprime_main_term(std::uint64_t n, std::uint64_t k) {
  if (n == 0) throw InvalidArgument("coprime_main_term: n must be >= 1");
  return (main_term_scale(n) * coprimality_factor(k)).mid();
}

Real divisible_main_term(std::uint64_t n, std::uint64_t k, std::uint64_t l) {
  arith::require_squarefree(l, "divisible_main_term");
  arith::require_squarefree(k, "divisible_main_term");
  if (std::gcd(k, l) != 1) throw InvalidArgument("divisible_main_term: (k, l) must be 1");
  if (n == 0) throw InvalidArgument("divisible_main_term: n must be >= 1");
  return (main_term_scale(n) * coprimality_factor(k) * divisibility_factor(l)).mid();
}

Real asymptotic_main_term(std::uint64_t n, std::uint64_t k, std::uint64_t l) {
  if (n == 0) throw InvalidArgument("asymptotic_main_term: n must be >= 1");
  arith::require_squarefree(k, "asymptotic_main_term");
  arith::require_squarefree(l, "asymptotic_main_term");
  if (std::gcd(l, n) != 1)
    throw InvalidArgument("asymptotic_main_term: (l, n) = " + std::to_string(std::gcd(l, n)) +
                          " > 1; n - (n, l) need not be squarefree infinitely often");
  if (std::gcd(k, l) != 1) throw InvalidArgument("asymptotic_main_term: (k, l) must be 1");
  const std::uint64_t k_n = k / std::gcd(k, n);
  if (k_n % 2 == 0)
    throw InvalidArgument("asymptotic_main_term: k / (k, n) = " + std::to_string(k_n) +
                          " is even; an even k has a positive main term only along even n");
  const Interval value = Interval(kArtinLiteral) * singular_factor(n) * coprimality_factor(k_n) *
                         divisibility_factor(l);
  return value.mid();
}

BoundParams BoundParams::make(Real C, Real N, Real n0, Rounding rounding) {
  if (!(C > 0 && C < 0.5L)) throw InvalidArgument("BoundParams: C must lie in (0, 1/2)");
  if (!(N > 0) || !std::isfinite(N)) throw InvalidArgument("BoundParams: N must be positive");
  if (!(n0 >= 1)) throw InvalidArgument("BoundParams: n0 must be >= 1");
  const Interval lhs = pow(Interval(n0), Interval(C));
  const Interval rhs = sqrt(Interval(N));
  if (!(lhs.lo() > rhs.hi())) {
    std::ostringstream msg;
    msg << "BoundParams: need n0^C > sqrt(N), got n0 = " << n0 << ", C = " << C << ", N = " << N;
    throw InvalidArgument(msg.str());
  }
  return {C, N, n0, rounding};
}

BoundParams BoundParams::minimal(Real C, Real N, Rounding rounding) {
  if (!(C > 0 && C < 0.5L)) throw InvalidArgument("BoundParams: C must lie in (0, 1/2)");
  if (!(N > 0) || !std::isfinite(N)) throw InvalidArgument("BoundParams: N must be positive");
  Real n0 = std::floor(std::pow(N, 1 / (2 * C)));
  for (;; n0 += std::max<Real>(1, n0 * 1e-15L)) {
    if (pow(Interval(n0), Interval(C)).lo() > sqrt(Interval(N)).hi()) break;
  }
  return make(C, N, n0, rounding);
}

Interval finite_phi_sum(std::uint64_t d, std::uint64_t e, Real N) {
  arith::require_squarefree(d, "finite_phi_sum");
  require_divides(e, d, "finite_phi_sum");
  if (!(N >= 0) || !std::isfinite(N)) throw InvalidArgument("finite_phi_sum: N must be finite and >= 0");
  Interval sum(0);
  const Real limit = N * static_cast<Real>(e);
  for (std::uint64_t a = e;; a += e) {
    const Real a2d = static_cast<Real>(a) * static_cast<Real>(a) * static_cast<Real>(d);
    if (a2d > limit) break;
    if (std::gcd(a, d) != e || !arith::is_squarefree(a)) continue;
    sum += Interval(1) / (Interval::exact(a) * Interval::exact(arith::euler_phi(a)));
  }
  return sum / Interval::exact(arith::euler_phi(d / e));
}

Interval total_phi_sum(std::uint64_t d, std::uint64_t e) {
  arith::require_squarefree(d, "total_phi_sum");
  require_divides(e, d, "total_phi_sum");
  Interval denominator(1);
  for (std::uint64_t p : arith::prime_divisors(d)) {
    const Interval pp = Interval::exact(p);
    denominator *= pp * pp - pp + Interval(1);
  }
  return Interval::exact(d / e) / denominator * zeta_ratio_closed_form();
}

Interval tail_phi_sum(std::uint64_t d, std::uint64_t e, Real N) {
  const Interval tail = total_phi_sum(d, e) - finite_phi_sum(d, e, N);
  return Interval(std::max<Real>(0, tail.lo()), std::max<Real>(0, tail.hi()));
}

ErrorTerms& ErrorTerms::operator+=(const ErrorTerms& other) {
  explicit_part += other.explicit_part;
  explicit_unit_part += other.explicit_unit_part;
  sieve_tail_part += other.sieve_tail_part;
  large_a_part += other.large_a_part;
  missing_moduli.insert(missing_moduli.end(), other.missing_moduli.begin(),
                        other.missing_moduli.end());
  sort_unique(missing_moduli);
  return *this;
}

ErrorTerms error_terms(Real n, std::uint64_t d, std::uint64_t e, const BoundParams& params,
                       const CThetaTable& table) {
  arith::require_squarefree(d, "error_terms");
  require_divides(e, d, "error_terms");
  require_integer(n, 2, "error_terms");
  if (n < params.n0) {
    std::ostringstream msg;
    msg << "error_terms: n = " << n << " is below n0 = " << params.n0;
    throw InvalidArgument(msg.str());
  }
  ErrorTerms out;
  const Interval nn(n);
  const Interval logn = log(nn);

  const Real limit = params.N * static_cast<Real>(e);
  Interval constants(0);
  for (std::uint64_t a = e;; a += e) {
    const Real a2d = static_cast<Real>(a) * static_cast<Real>(a) * static_cast<Real>(d);
    if (a2d > limit) break;
    if (std::gcd(a, d) != e || !arith::is_squarefree(a)) continue;
    const std::uint64_t modulus = arith::checked_mul(d / e, arith::checked_mul(a, a));
    const auto entry = table.lookup(modulus, n);
    if (!entry) {
      out.missing_moduli.push_back(modulus);
      continue;
    }
    const Interval c(Interval::rounded(entry->constant).hi());
    constants += c;
    if (modulus == 1) out.explicit_unit_part = c / logn;
  }
  out.explicit_part = constants / logn;

  const Interval C(params.C);
  out.sieve_tail_part = (Interval(1) + Interval(2) * C) / (Interval(1) - Interval(2) * C) *
                        tail_phi_sum(d, e, params.N);

  const Interval inv_sqrt_n = Interval(1) / sqrt(nn);
  const Interval n_minus_c = exp(-(C * logn));
  const Interval de = Interval::exact(d) * Interval::exact(e);
  out.large_a_part =
      logn * (inv_sqrt_n * (Interval(1) / Interval::exact(e) - Interval(1) / Interval::exact(d)) +
              n_minus_c / sqrt(de) + n_minus_c * n_minus_c);
  sort_unique(out.missing_moduli);
  return out;
}

ErrorTerms error_terms_k(Real n, std::uint64_t k, const BoundParams& params,
                         const CThetaTable& table) {
  arith::require_squarefree(k, "error_terms_k");
  ErrorTerms sum;
  for (const auto& d : arith::squarefree_divisors(k))
    for (const auto& e : arith::squarefree_divisors(d.value))
      sum += error_terms(n, d.value, e.value, params, table);
  return sum;
}

namespace {

Real scaled_envelope(const ErrorTerms& terms, Real n, const BoundParams& params) {
  if (!terms.missing_moduli.empty()) {
    std::ostringstream msg;
    msg << "c_theta table lacks " << terms.missing_moduli.size() << " moduli (first "
        << terms.missing_moduli.front() << ")";
    throw MissingDataError(msg.str(), terms.missing_moduli);
  }
  return pick(Interval(n) * terms.total(), params.rounding, true);
}

}  // namespace

Real error_bound_de(Real n, std::uint64_t d, std::uint64_t e, const BoundParams& params,
                    const CThetaTable& table) {
  return scaled_envelope(error_terms(n, d, e, params, table), n, params);
}

Real error_bound_k(Real n, std::uint64_t k, const BoundParams& params, const CThetaTable& table) {
  return scaled_envelope(error_terms_k(n, k, params, table), n, params);
}

Real LowerBoundReport::reported_main() const { return pick(main_term, params.rounding, false); }

Real LowerBoundReport::reported_penalty(const Interval& group) const {
  return pick(group, params.rounding, true);
}

std::optional<Real> LowerBoundReport::reported_total() const {
  if (!total) return std::nullopt;
  return pick(*total, params.rounding, false);
}

namespace {

LowerBoundReport evaluate_lower_bound(BoundParity parity, Real n, std::uint64_t k,
                                      std::uint64_t inner_k, Real main_coefficient,
                                      const BoundParams& params, const CThetaTable& table) {
  if (!(pow(Interval(n), Interval(params.C)).lo() > sqrt(Interval(params.N)).hi()))
    throw InvalidArgument("lower bound: need n^C > sqrt(N)");
  const ErrorTerms terms = error_terms_k(n, inner_k, params, table);

  LowerBoundReport r{};
  r.parity = parity;
  r.n = n;
  r.k = k;
  r.params = params;
  r.main_term = Interval(main_coefficient) * artin_literal() * coprimality_factor(inner_k);
  r.explicit_group = terms.explicit_part;
  r.explicit_unit_term = terms.explicit_unit_part;
  r.sieve_tail_group = terms.sieve_tail_part;
  r.large_a_group = terms.large_a_part;
  const Interval nn(n);
  r.log_group = (log(Interval::exact(k)) + log(nn)) / nn;
  r.missing_moduli = terms.missing_moduli;
  r.table_provenance = table.provenance();
  if (!r.missing_moduli.empty()) {
    r.verdict = Verdict::InsufficientTable;
    return r;
  }
  r.total = r.main_term - r.explicit_group - r.sieve_tail_group - r.large_a_group - r.log_group;
  r.verdict = *r.reported_total() > 0 ? Verdict::Positive : Verdict::NotPositive;
  return r;
}

Real require_total(const LowerBoundReport& report) {
  if (report.verdict == Verdict::InsufficientTable) {
    std::ostringstream msg;
    msg << "c_theta table lacks " << report.missing_moduli.size() << " moduli (first "
        << report.missing_moduli.front() << ")";
    throw MissingDataError(msg.str(), report.missing_moduli);
  }
  return *report.reported_total();
}

}  // namespace

LowerBoundReport evaluate_even_lower_bound(Real n, std::uint64_t k, const BoundParams& params,
                                           const CThetaTable& table) {
  if (k < 2 || k > 200000 || k % 2 != 0)
    throw InvalidArgument("even lower bound: k must be even with 2 <= k <= 2e5");
  arith::require_squarefree(k, "even lower bound");
  require_integer(n, 4e18L, "even lower bound");
  if (std::fmod(n, 2) != 0) throw InvalidArgument("even lower bound: n must be even");
  return evaluate_lower_bound(BoundParity::Even, n, k, k / 2, 2, params, table);
}

LowerBoundReport evaluate_odd_lower_bound(Real n, std::uint64_t k, const BoundParams& params,
                                          const CThetaTable& table) {
  if (k < 1 || k > 100000 || k % 2 == 0)
    throw InvalidArgument("odd lower bound: k must be odd with 1 <= k <= 1e5");
  arith::require_squarefree(k, "odd lower bound");
  require_integer(n, 8e9L, "odd lower bound");
  return evaluate_lower_bound(BoundParity::Odd, n, k, k, 1, params, table);
}

Real even_lower_bound(Real n, std::uint64_t k, const BoundParams& params, const CThetaTable& table) {
  return require_total(evaluate_even_lower_bound(n, k, params, table));
}

Real odd_lower_bound(Real n, std::uint64_t k, const BoundParams& params, const CThetaTable& table) {
  return require_total(evaluate_odd_lower_bound(n, k, params, table));
}

ChenFactorBound chen_factor_bound(const ChebyshevConstants& constants) {
  ChenFactorBound out{};
  out.constants = constants;
  out.theta13 = log(Interval::exact(2 * 3 * 5 * 7 * 11 * 13));
  out.e36 = exp(Interval(36));
  // theta(p_{m+6}) - theta(13) < e^36 together with theta(x) > ratio x.
  out.prime_upper = (out.e36 + out.theta13) / Interval::rounded(constants.theta_ratio);
  if (out.prime_upper.lo() < static_cast<Real>(std::max(constants.theta_from, constants.pi_from)))
    throw InvalidArgument("chen_factor_bound: inversion point below the constants' range");
  // m + 6 = pi(p_{m+6}) <= pi(X) < pi_ratio X / log X.
  out.count_upper = Interval::rounded(constants.pi_ratio) * out.prime_upper / log(out.prime_upper) -
                    Interval(6);
  out.bound = static_cast<std::uint64_t>(std::floor(out.count_upper.hi()));
  out.e33 = exp(Interval(33));
  out.below_e33 = out.count_upper.hi() < out.e33.lo();
  return out;
}

}  // namespace psq::analytic
