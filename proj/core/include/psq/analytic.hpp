#pragma once

// Main terms, explicit error envelopes and Euler-product constants for the
// prime-plus-squarefree counts, evaluated with outward-rounded intervals so
// that positivity conclusions are sound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psq/ctheta.hpp"
#include "psq/interval.hpp"

namespace psq::analytic {

// ---------------------------------------------------------------------------
// Constants

/// Artin's constant truncated to 10 decimals from Wrench's 45-digit value.
/// Truncation makes it a lower bound.
inline constexpr Real kArtinLiteral = 0.3739558136L;

/// [0.3739558136, 0.3739558137], the enclosure implied by the literal. Bound
/// evaluation uses its lower endpoint.
Interval artin_literal();

struct CertifiedValue {
  Real estimate;
  Interval enclosure;
  std::uint64_t truncation;  // primes <= truncation were multiplied out
  std::uint64_t prime_count;

  friend bool operator==(const CertifiedValue&, const CertifiedValue&) = default;
};

/// prod over primes p <= limit of (1 - 1/(p(p-1))), round-to-nearest.
Real artin_partial_product(std::uint64_t limit);

inline constexpr std::uint64_t kDefaultMaxTruncation = 2'000'000'000;

/// Truncated Euler product with a certified tail, choosing the truncation so
/// the enclosure is no wider than 10^-target_digits. Throws ResourceError if
/// that needs primes beyond max_truncation or more than long double holds.
CertifiedValue artin_constant(unsigned target_digits,
                              std::uint64_t max_truncation = kDefaultMaxTruncation);
/// Same, at a fixed truncation.
CertifiedValue artin_constant_at(std::uint64_t truncation);

/// zeta(3) from the alternating central-binomial series.
Interval zeta3();
/// zeta(2) zeta(3) / zeta(6) = sum over a of mu(a)^2 / phi(a^2).
Interval zeta_ratio_closed_form();

struct ZetaRatio {
  Interval from_zeta_values;
  CertifiedValue euler_product;  // prod (1 + 1/(p^2 - p)) with tail
  Real agreement() const;        // |euler estimate - zeta midpoint|
};

inline constexpr std::uint64_t kDefaultZetaTruncation = 100'000'000;

/// Evaluates the ratio through the Euler product and through zeta values.
ZetaRatio zeta_ratio(std::uint64_t truncation = kDefaultZetaTruncation);

struct AnalyticConstants {
  Interval artin_c;
  Interval zeta_ratio;
  std::uint64_t truncation_prime;  // 0 when the literal enclosure is used

  /// Literal Artin enclosure and closed-form zeta ratio; no sieving.
  static AnalyticConstants standard();
  /// Both from truncated Euler products.
  static AnalyticConstants computed(std::uint64_t truncation);
};

// ---------------------------------------------------------------------------
// Main terms (round-to-nearest, literal Artin constant)

/// prod over p | n of (1 + 1/(p^2 - p - 1)).
Interval singular_factor(std::uint64_t n);
/// prod over q | k of (1 - (q - 1)/(q^2 - q - 1)); exactly 0 for even k.
Interval coprimality_factor(std::uint64_t k);
/// prod over r | l of (r - 1)/(r^2 - r - 1).
Interval divisibility_factor(std::uint64_t l);

/// c n singular(n) mu(e) (d/e) / prod over q | d of (q^2 - q - 1).
Real residue_class_main_term(std::uint64_t n, std::uint64_t d, std::uint64_t e);
/// c n singular(n) coprimality(k).
Real coprime_main_term(std::uint64_t n, std::uint64_t k);
/// coprime_main_term(n, k) * divisibility(l), requires (k, l) = 1.
Real divisible_main_term(std::uint64_t n, std::uint64_t k, std::uint64_t l);

/// Limit of count / n: c singular(n) coprimality(k / (k, n)) divisibility(l).
/// Requires (l, n) = (k, l) = 1 and k / (k, n) odd (an even k only has a
/// positive main term along even n).
Real asymptotic_main_term(std::uint64_t n, std::uint64_t k, std::uint64_t l = 1);

// ---------------------------------------------------------------------------
// Error envelopes

enum class Rounding { ConservativeDirected, Nearest };

const char* to_string(Rounding r);

struct BoundParams {
  Real C;          // in (0, 1/2)
  Real N;          // > 0; explicit constants used for a <= sqrt(N e / d)
  Real n0;         // arguments below n0 are rejected; n0^C > sqrt(N)
  Rounding rounding;

  /// Validates 0 < C < 1/2, N > 0 and n0^C > sqrt(N).
  static BoundParams make(Real C, Real N, Real n0, Rounding rounding = Rounding::ConservativeDirected);
  /// Smallest admissible integer n0 for the given C and N.
  static BoundParams minimal(Real C, Real N, Rounding rounding = Rounding::ConservativeDirected);

  friend bool operator==(const BoundParams&, const BoundParams&) = default;
};

/// (1 / phi(d/e)) * sum over a with a^2 d <= N e, (a, d) = e of
/// mu(a)^2 / phi(a^2).
Interval finite_phi_sum(std::uint64_t d, std::uint64_t e, Real N);
/// The same sum over every a: (d/e) / prod over p | d of (p^2 - p + 1) times
/// the zeta ratio.
Interval total_phi_sum(std::uint64_t d, std::uint64_t e);
/// total - finite: the part with a^2 d > N e. Never negative.
Interval tail_phi_sum(std::uint64_t d, std::uint64_t e, Real N);

/// The three parts of the envelope for one (d, e), each divided by n.
struct ErrorTerms {
  Interval explicit_part;       // (1/log n) sum of c_theta(d a^2/e) mu(a)^2
  Interval explicit_unit_part;  // the modulus-1 share of explicit_part
  Interval sieve_tail_part;     // (1+2C)/(1-2C) * tail_phi_sum
  Interval large_a_part;        // log n (n^-1/2 (1/e - 1/d) + n^-C/sqrt(de) + n^-2C)
  std::vector<std::uint64_t> missing_moduli;

  Interval total() const { return explicit_part + sieve_tail_part + large_a_part; }
  ErrorTerms& operator+=(const ErrorTerms& other);
};

/// Envelope parts for one (d, e) at n. Moduli the table cannot serve are
/// listed in missing_moduli and contribute nothing.
ErrorTerms error_terms(Real n, std::uint64_t d, std::uint64_t e, const BoundParams& params,
                       const CThetaTable& table);
/// Sum of error_terms over d | k, e | d.
ErrorTerms error_terms_k(Real n, std::uint64_t k, const BoundParams& params,
                         const CThetaTable& table);

/// The envelope E_{d,e}(n) itself (not divided by n). Conservative rounding
/// returns the upper endpoint; throws MissingDataError naming every modulus
/// the table lacks.
Real error_bound_de(Real n, std::uint64_t d, std::uint64_t e, const BoundParams& params,
                    const CThetaTable& table);
/// Sum of error_bound_de over d | k, e | d.
Real error_bound_k(Real n, std::uint64_t k, const BoundParams& params, const CThetaTable& table);

// ---------------------------------------------------------------------------
// Lower bounds for the nontrivial coprime count divided by n

enum class Verdict { Positive, NotPositive, InsufficientTable };

const char* to_string(Verdict v);

enum class BoundParity { Even, Odd };

/// Every displayed component of a lower bound. Penalty groups are reported
/// as the amount subtracted.
struct LowerBoundReport {
  BoundParity parity;
  Real n;
  std::uint64_t k;
  BoundParams params;
  Interval main_term;
  Interval explicit_group;
  Interval explicit_unit_term;
  Interval sieve_tail_group;
  Interval large_a_group;
  Interval log_group;  // (log k + log n) / n
  std::optional<Interval> total;
  Verdict verdict;
  std::vector<std::uint64_t> missing_moduli;
  std::string table_provenance;

  /// Scalar for a component under params.rounding: the main term rounds
  /// down, penalties round up; Nearest reports midpoints.
  Real reported_main() const;
  Real reported_penalty(const Interval& group) const;
  std::optional<Real> reported_total() const;

  friend bool operator==(const LowerBoundReport&, const LowerBoundReport&) = default;
};

/// Lower bound for even n >= 4e18 and even squarefree 2 <= k <= 2e5, with
/// the sums running over d | k/2. The verdict is InsufficientTable when any
/// needed c_theta is absent.
LowerBoundReport evaluate_even_lower_bound(Real n, std::uint64_t k, const BoundParams& params,
                                           const CThetaTable& table);
/// Lower bound for n >= 8e9 and odd squarefree k <= 1e5, sums over d | k.
LowerBoundReport evaluate_odd_lower_bound(Real n, std::uint64_t k, const BoundParams& params,
                                          const CThetaTable& table);

/// Reported totals; throw MissingDataError when the table is insufficient.
Real even_lower_bound(Real n, std::uint64_t k, const BoundParams& params, const CThetaTable& table);
Real odd_lower_bound(Real n, std::uint64_t k, const BoundParams& params, const CThetaTable& table);

// ---------------------------------------------------------------------------
// Prime-factor count bound for the even-n application

/// Chebyshev-type inequalities used to invert theta. Sources:
///   theta(x) > 0.84 x for x >= 101: from Rosser-Schoenfeld (1962) Thm 4,
///     theta(x) > x (1 - 1/log x) for x >= 41, which gives 0.84 once
///     x >= 519; 101 <= x < 519 is checked by direct computation in tests.
///   pi(x) < 1.3 x / log x for x >= 17: weaker than Rosser-Schoenfeld (1962)
///     Cor. 1, pi(x) < 1.25506 x / log x for x > 1.
struct ChebyshevConstants {
  Real theta_ratio = 0.84L;
  std::uint64_t theta_from = 101;
  Real pi_ratio = 1.3L;
  std::uint64_t pi_from = 17;

  friend bool operator==(const ChebyshevConstants&, const ChebyshevConstants&) = default;
};

struct ChenFactorBound {
  Interval theta13;       // log 30030
  Interval e36;           // exp(36)
  Interval prime_upper;   // p_{m+6} < (e^36 + theta(13)) / theta_ratio
  Interval count_upper;   // m <= pi(prime_upper) - 6 < pi_ratio X / log X - 6
  std::uint64_t bound;    // floor of count_upper.hi
  Interval e33;
  bool below_e33;
  ChebyshevConstants constants;

  friend bool operator==(const ChenFactorBound&, const ChenFactorBound&) = default;
};

/// Upper bound for max{m : p_7 p_8 ... p_{m+6} < exp(exp(36))}.
ChenFactorBound chen_factor_bound(const ChebyshevConstants& constants = {});

}  // namespace psq::analytic
