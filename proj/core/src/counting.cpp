#include "psq/counting.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "psq/arith.hpp"
#include "psq/error.hpp"

namespace psq::counting {
namespace {

void require_table(const sieve::NumberTable& table, std::uint64_t n, const char* op) {
  if (table.limit() < n)
    throw InvalidArgument(std::string(op) + ": number table covers only up to " +
                          std::to_string(table.limit()) + ", need " + std::to_string(n));
}

void require_n(std::uint64_t n, const char* op) {
  if (n < 1) throw InvalidArgument(std::string(op) + ": n must be >= 1");
}

Real log_of(std::uint64_t p) { return std::log(static_cast<Real>(p)); }

// Sum over primes p < n of log p where eta = n - p passes `accept`.
template <class Accept>
WeightedCount sum_over_primes(std::uint64_t n, const sieve::NumberTable& table, Accept&& accept) {
  CompensatedSum sum;
  WeightedCount out;
  if (n < 3) return out;
  for (std::uint64_t p : table.primes_up_to(n - 1)) {
    const std::uint64_t eta = n - p;
    if (!table.is_squarefree(eta) || !accept(eta)) continue;
    sum.add(log_of(p));
    ++out.terms;
  }
  out.value = sum.value();
  return out;
}

sieve::NumberTable table_for(std::uint64_t n) { return sieve::NumberTable(std::max<std::uint64_t>(n, 2)); }

}  // namespace

void CompensatedSum::add(Real x) noexcept {
  const Real t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

WeightedCount theta_progression(std::uint64_t x, std::uint64_t m, std::uint64_t residue,
                                const sieve::NumberTable& table) {
  if (m == 0) throw InvalidArgument("theta_progression: modulus must be >= 1");
  require_table(table, x, "theta_progression");
  const std::uint64_t r = residue % m;
  CompensatedSum sum;
  WeightedCount out;
  const auto primes = table.primes_up_to(x);
  if (m > 1 && x / m < primes.size()) {
    // Walk the progression directly; cheaper than filtering all primes.
    for (std::uint64_t v = r; v <= x; v += m) {
      if (table.is_prime(v)) {
        sum.add(log_of(v));
        ++out.terms;
      }
      if (x - v < m) break;
    }
  } else {
    for (std::uint64_t p : primes) {
      if (p % m != r) continue;
      sum.add(log_of(p));
      ++out.terms;
    }
  }
  out.value = sum.value();
  return out;
}

WeightedCount theta_progression(std::uint64_t x, std::uint64_t m, std::uint64_t residue) {
  return theta_progression(x, m, residue, table_for(x));
}

WeightedCount count_representations(std::uint64_t n, const sieve::NumberTable& table) {
  require_n(n, "count_representations");
  require_table(table, n, "count_representations");
  return sum_over_primes(n, table, [](std::uint64_t) { return true; });
}

WeightedCount count_representations(std::uint64_t n) {
  return count_representations(n, table_for(n));
}

WeightedCount count_coprime(std::uint64_t n, std::uint64_t k, const sieve::NumberTable& table) {
  require_n(n, "count_coprime");
  arith::require_squarefree(k, "count_coprime");
  require_table(table, n, "count_coprime");
  return sum_over_primes(n, table, [k](std::uint64_t eta) { return std::gcd(eta, k) == 1; });
}

WeightedCount count_coprime(std::uint64_t n, std::uint64_t k) { return count_coprime(n, k, table_for(n)); }

WeightedCount count_coprime_nontrivial(std::uint64_t n, std::uint64_t k,
                                       const sieve::NumberTable& table) {
  require_n(n, "count_coprime_nontrivial");
  arith::require_squarefree(k, "count_coprime_nontrivial");
  require_table(table, n, "count_coprime_nontrivial");
  return sum_over_primes(n, table,
                         [k](std::uint64_t eta) { return eta != 1 && std::gcd(eta, k) == 1; });
}

WeightedCount count_coprime_nontrivial(std::uint64_t n, std::uint64_t k) {
  return count_coprime_nontrivial(n, k, table_for(n));
}

WeightedCount count_coprime_divisible(std::uint64_t n, std::uint64_t k, std::uint64_t l,
                                      const sieve::NumberTable& table) {
  require_n(n, "count_coprime_divisible");
  arith::require_squarefree(k, "count_coprime_divisible");
  arith::require_squarefree(l, "count_coprime_divisible");
  if (std::gcd(k, l) != 1)
    throw InvalidArgument("count_coprime_divisible: (k, l) = " + std::to_string(std::gcd(k, l)) +
                          " > 1, the count would vanish identically");
  require_table(table, n, "count_coprime_divisible");
  return sum_over_primes(n, table, [k, l](std::uint64_t eta) {
    return eta % l == 0 && std::gcd(eta, k) == 1;
  });
}

WeightedCount count_coprime_divisible(std::uint64_t n, std::uint64_t k, std::uint64_t l) {
  return count_coprime_divisible(n, k, l, table_for(n));
}

WeightedCount residue_class_sum(std::uint64_t n, std::uint64_t d, std::uint64_t e,
                                const sieve::NumberTable& table) {
  require_n(n, "residue_class_sum");
  arith::require_squarefree(d, "residue_class_sum");
  if (e == 0 || d % e != 0)
    throw InvalidArgument("residue_class_sum: e = " + std::to_string(e) + " does not divide d = " +
                          std::to_string(d));
  require_table(table, n, "residue_class_sum");
  CompensatedSum sum;
  WeightedCount out;
  if (n < 3) return out;
  const std::uint64_t amax = arith::isqrt(n);
  for (std::uint64_t a = e; a <= amax; a += e) {
    if (std::gcd(a, d) != e) continue;
    const int mu = arith::mobius(a);
    if (mu == 0) continue;
    // d a^2 / e <= d * n, which fits for every n the table can hold.
    const std::uint64_t m = arith::checked_mul(d / e, a * a);
    const WeightedCount theta = theta_progression(n - 1, m, n % m, table);
    sum.add(mu * theta.value);
    out.terms += theta.terms;
  }
  out.value = sum.value();
  return out;
}

WeightedCount residue_class_sum(std::uint64_t n, std::uint64_t d, std::uint64_t e) {
  return residue_class_sum(n, d, e, table_for(n));
}

WeightedCount count_coprime_by_inclusion_exclusion(std::uint64_t n, std::uint64_t k,
                                                   const sieve::NumberTable& table) {
  require_n(n, "count_coprime_by_inclusion_exclusion");
  arith::require_squarefree(k, "count_coprime_by_inclusion_exclusion");
  require_table(table, n, "count_coprime_by_inclusion_exclusion");
  CompensatedSum sum;
  WeightedCount out;
  for (const auto& d : arith::squarefree_divisors(k)) {
    for (const auto& e : arith::squarefree_divisors(d.value)) {
      const WeightedCount part = residue_class_sum(n, d.value, e.value, table);
      sum.add(d.mobius * part.value);
      out.terms += part.terms;
    }
  }
  out.value = sum.value();
  return out;
}

WeightedCount count_coprime_by_inclusion_exclusion(std::uint64_t n, std::uint64_t k) {
  return count_coprime_by_inclusion_exclusion(n, k, table_for(n));
}

std::vector<Representation> enumerate_representations(std::uint64_t n, std::uint64_t k,
                                                      bool exclude_one, std::size_t limit,
                                                      const sieve::NumberTable& table) {
  require_n(n, "enumerate_representations");
  arith::require_squarefree(k, "enumerate_representations");
  require_table(table, n, "enumerate_representations");
  std::vector<Representation> out;
  if (n < 3) return out;
  for (std::uint64_t p : table.primes_up_to(n - 1)) {
    if (out.size() >= limit) break;
    const std::uint64_t eta = n - p;
    if (exclude_one && eta == 1) continue;
    if (table.is_squarefree(eta) && std::gcd(eta, k) == 1) out.push_back({n, p, eta});
  }
  return out;
}

std::vector<Representation> enumerate_representations(std::uint64_t n, std::uint64_t k,
                                                      bool exclude_one, std::size_t limit) {
  return enumerate_representations(n, k, exclude_one, limit, table_for(n));
}

void validate(const Representation& rep) {
  if (!arith::is_prime(rep.p))
    throw InvalidArgument("representation: " + std::to_string(rep.p) + " is not prime");
  if (rep.eta == 0 || !arith::is_squarefree(rep.eta))
    throw InvalidArgument("representation: " + std::to_string(rep.eta) + " is not squarefree");
  if (rep.p + rep.eta != rep.n)
    throw InvalidArgument("representation: p + eta != n for n = " + std::to_string(rep.n));
}

}  // namespace psq::counting
