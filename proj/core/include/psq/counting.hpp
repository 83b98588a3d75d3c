#pragma once

// Exact evaluation of the log-weighted representation counts of n as a
// prime plus a squarefree number, by direct summation over primes, and the
// inclusion-exclusion route over residue classes used as a cross-check.
//
// Convention: a representation needs eta = n - p >= 1, so the p = n term
// never contributes (mu^2(0) is taken to be 0).

#include <cstdint>
#include <vector>

#include "psq/interval.hpp"
#include "psq/sieve.hpp"

namespace psq::counting {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(Real x) noexcept;
  Real value() const noexcept { return sum_ + compensation_; }

 private:
  Real sum_ = 0;
  Real compensation_ = 0;
};

/// Sum of log p over the contributing primes. value is >= 0 and is 0 exactly
/// when terms == 0, except for the signed residue-class sums.
struct WeightedCount {
  Real value = 0;
  std::uint64_t terms = 0;

  friend bool operator==(const WeightedCount&, const WeightedCount&) = default;
};

struct Representation {
  std::uint64_t n;
  std::uint64_t p;
  std::uint64_t eta;

  friend bool operator==(const Representation&, const Representation&) = default;
};

/// Sum of log p over primes p <= x with p = residue (mod m).
WeightedCount theta_progression(std::uint64_t x, std::uint64_t m, std::uint64_t residue,
                                const sieve::NumberTable& table);
WeightedCount theta_progression(std::uint64_t x, std::uint64_t m, std::uint64_t residue);

/// Every prime-plus-squarefree representation of n, log-weighted.
WeightedCount count_representations(std::uint64_t n, const sieve::NumberTable& table);
WeightedCount count_representations(std::uint64_t n);

/// Representations with (eta, k) = 1.
WeightedCount count_coprime(std::uint64_t n, std::uint64_t k, const sieve::NumberTable& table);
WeightedCount count_coprime(std::uint64_t n, std::uint64_t k);

/// Representations with (eta, k) = 1 and eta != 1.
WeightedCount count_coprime_nontrivial(std::uint64_t n, std::uint64_t k,
                                       const sieve::NumberTable& table);
WeightedCount count_coprime_nontrivial(std::uint64_t n, std::uint64_t k);

/// Representations with (eta, k) = 1 and l | eta. Requires (k, l) = 1.
WeightedCount count_coprime_divisible(std::uint64_t n, std::uint64_t k, std::uint64_t l,
                                      const sieve::NumberTable& table);
WeightedCount count_coprime_divisible(std::uint64_t n, std::uint64_t k, std::uint64_t l);

/// Signed residue-class sum over a <= sqrt(n) with (a, d) = e of
/// mu(a) * theta(n - 1; d a^2 / e, n). Requires e | d, d squarefree.
WeightedCount residue_class_sum(std::uint64_t n, std::uint64_t d, std::uint64_t e,
                                const sieve::NumberTable& table);
WeightedCount residue_class_sum(std::uint64_t n, std::uint64_t d, std::uint64_t e);

/// count_coprime(n, k) rebuilt as sum over d | k, e | d of
/// mu(d) * residue_class_sum(n, d, e).
WeightedCount count_coprime_by_inclusion_exclusion(std::uint64_t n, std::uint64_t k,
                                                   const sieve::NumberTable& table);
WeightedCount count_coprime_by_inclusion_exclusion(std::uint64_t n, std::uint64_t k);

/// Up to `limit` witnesses in increasing p; exhaustive when fewer exist.
std::vector<Representation> enumerate_representations(std::uint64_t n, std::uint64_t k,
                                                      bool exclude_one, std::size_t limit,
                                                      const sieve::NumberTable& table);
std::vector<Representation> enumerate_representations(std::uint64_t n, std::uint64_t k,
                                                      bool exclude_one, std::size_t limit);

/// Throws unless p is prime, eta squarefree and p + eta == n.
void validate(const Representation& rep);

}  // namespace psq::counting
