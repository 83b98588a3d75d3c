#include "psq/arith.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "psq/error.hpp"

namespace psq::arith {
namespace {

constexpr std::uint64_t kTrialLimit = std::uint64_t{1} << 20;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin(std::uint64_t n) {
  // Deterministic for n < 3.3e24 with the first 12 prime bases.
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n is odd, composite, free of small factors.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t g = pollard_brent(n);
  split_large(g, out);
  split_large(n / g, out);
}

void require_positive(std::uint64_t n, const char* op) {
  if (n == 0) throw InvalidArgument(std::string(op) + ": argument must be >= 1");
}

}  // namespace

Factorization::Factorization(std::uint64_t value) : value_(value) {
  require_positive(value, "Factorization");
  std::uint64_t rest = value;
  for (std::uint32_t p : trial_primes()) {
    const std::uint64_t pp = p;
    if (pp * pp > rest) break;
    if (rest % pp) continue;
    unsigned e = 0;
    while (rest % pp == 0) {
      rest /= pp;
      ++e;
    }
    factors_.push_back({pp, e});
  }
  if (rest == 1) return;
  // Every prime factor of `rest` exceeds the trial bound or rest itself is
  // prime; below 2^40 the latter must hold.
  if (rest < kTrialLimit * kTrialLimit || is_prime(rest)) {
    factors_.push_back({rest, 1});
    return;
  }
  std::vector<std::uint64_t> large;
  split_large(rest, large);
  std::sort(large.begin(), large.end());
  for (std::uint64_t p : large) {
    if (!factors_.empty() && factors_.back().prime == p)
      ++factors_.back().exponent;
    else
      factors_.push_back({p, 1});
  }
}

bool Factorization::squarefree() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

std::uint64_t Factorization::radical() const noexcept {
  std::uint64_t r = 1;
  for (const auto& f : factors_) r *= f.prime;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  return miller_rabin(n);
}

int mobius(std::uint64_t n) {
  require_positive(n, "mobius");
  const Factorization f(n);
  if (!f.squarefree()) return 0;
  return f.omega() % 2 ? -1 : 1;
}

int mu_squared_via_divisors(std::uint64_t n) {
  require_positive(n, "mu_squared_via_divisors");
  int sum = 0;
  for (std::uint64_t a = 1; a <= n / a; ++a) {
    if (n % (a * a) == 0) sum += mobius(a);
  }
  return sum;
}

bool is_squarefree(std::uint64_t n) {
  require_positive(n, "is_squarefree");
  return Factorization(n).squarefree();
}

std::uint64_t euler_phi(std::uint64_t n) {
  require_positive(n, "euler_phi");
  std::uint64_t phi = n;
  const Factorization fac(n);
  for (const auto& f : fac.factors()) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

std::vector<Divisor> squarefree_divisors(std::uint64_t k) {
  require_squarefree(k, "squarefree_divisors");
  std::vector<Divisor> out{{1, 1}};
  const Factorization fac(k);
  for (const auto& f : fac.factors()) {
    const std::size_t size = out.size();
    for (std::size_t i = 0; i < size; ++i)
      out.push_back({out[i].value * f.prime, -out[i].mobius});
  }
  std::sort(out.begin(), out.end(),
            [](const Divisor& a, const Divisor& b) { return a.value < b.value; });
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  require_positive(n, "prime_divisors");
  std::vector<std::uint64_t> out;
  const Factorization fac(n);
  for (const auto& f : fac.factors()) out.push_back(f.prime);
  return out;
}

std::uint64_t primorial(unsigned m) {
  if (m == 0) throw InvalidArgument("primorial: m must be >= 1");
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= m; ++i) {
    try {
      result = checked_mul(result, nth_prime(i));
    } catch (const OverflowError&) {
      throw OverflowError("primorial(" + std::to_string(m) + ") exceeds 64 bits");
    }
  }
  return result;
}

std::uint64_t nth_prime(std::uint64_t m) {
  const auto& primes = trial_primes();
  if (m == 0 || m > primes.size())
    throw InvalidArgument("nth_prime: index " + std::to_string(m) + " out of table range");
  return primes[m - 1];
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError(std::to_string(a) + " * " + std::to_string(b) + " overflows 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError(std::to_string(a) + " + " + std::to_string(b) + " overflows 64 bits");
  return r;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  std::uint64_t r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

void require_squarefree(std::uint64_t k, const char* what) {
  if (k == 0) throw InvalidArgument(std::string(what) + ": k must be >= 1");
  if (!Factorization(k).squarefree())
    throw InvalidArgument(std::string(what) + ": " + std::to_string(k) + " is not squarefree");
}

}  // namespace psq::arith
