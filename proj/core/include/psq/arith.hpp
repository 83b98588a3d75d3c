#pragma once

// Exact multiplicative-function arithmetic on 64-bit integers.

#include <cstdint>
#include <span>
#include <vector>

namespace psq::arith {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer, primes strictly increasing.
class Factorization {
 public:
  explicit Factorization(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  std::span<const PrimePower> factors() const noexcept { return factors_; }

  /// Number of distinct prime factors.
  std::size_t omega() const noexcept { return factors_.size(); }
  bool squarefree() const noexcept;
  /// Product of the distinct primes.
  std::uint64_t radical() const noexcept;

 private:
  std::uint64_t value_;
  std::vector<PrimePower> factors_;
};

struct Divisor {
  std::uint64_t value;
  int mobius;

  friend bool operator==(const Divisor&, const Divisor&) = default;
};

/// Deterministic primality for the whole 64-bit range.
bool is_prime(std::uint64_t n);

int mobius(std::uint64_t n);

/// mu(n)^2 as the divisor sum over a with a^2 | n of mu(a). Independent of
/// mobius() except for the mu(a) values of a <= sqrt(n).
int mu_squared_via_divisors(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// All divisors of a squarefree k in ascending order, each with mu(divisor).
std::vector<Divisor> squarefree_divisors(std::uint64_t k);

/// Distinct prime divisors in ascending order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Product of the first m primes. Throws OverflowError for m > 15.
std::uint64_t primorial(unsigned m);

/// The m-th prime, 1-based (nth_prime(1) == 2).
std::uint64_t nth_prime(std::uint64_t m);

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

/// floor(sqrt(n)), exact.
std::uint64_t isqrt(std::uint64_t n) noexcept;

/// Throws InvalidArgument naming `what` unless k >= 1 and squarefree.
void require_squarefree(std::uint64_t k, const char* what);

}  // namespace psq::arith
