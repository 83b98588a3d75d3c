#pragma once

// Segmented sieves producing primality, squarefreeness and Mobius values
// over arbitrary intervals [lo, hi].

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace psq::sieve {

enum class Kind : std::uint8_t { Prime = 1, Squarefree = 2, MobiusValues = 3 };

const char* to_string(Kind kind);

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kMaxSieveValue = std::uint64_t{1} << 63;

struct SieveOptions {
  /// Largest hi - lo + 1 a single call may allocate.
  std::uint64_t max_span = std::uint64_t{1} << 32;
};

/// Result of sieving one interval. Prime and Squarefree kinds are packed one
/// bit per integer in 64-bit words; MobiusValues stores one signed byte each.
class SegmentBitmap {
 public:
  SegmentBitmap(Kind kind, std::uint64_t lo, std::uint64_t hi);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  std::uint64_t size() const noexcept { return hi_ - lo_ + 1; }

  /// Membership for Prime / Squarefree bitmaps; n must lie in [lo, hi].
  bool test(std::uint64_t n) const;
  /// Mobius value for MobiusValues bitmaps.
  int mobius(std::uint64_t n) const;

  /// Number of members (set bits, or nonzero Mobius entries).
  std::uint64_t count() const noexcept;
  std::vector<std::uint64_t> members() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }
  std::span<const std::int8_t> mobius_values() const noexcept { return mu_; }
  std::span<std::int8_t> mobius_values() noexcept { return mu_; }

  /// Binary checkpoint: magic, kind, lo, hi, then little-endian payload.
  void dump(std::ostream& out) const;
  static SegmentBitmap load(std::istream& in);

  friend bool operator==(const SegmentBitmap&, const SegmentBitmap&) = default;

 private:
  Kind kind_;
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> words_;
  std::vector<std::int8_t> mu_;
};

SegmentBitmap sieve_primes(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});
SegmentBitmap sieve_squarefree(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});
SegmentBitmap sieve_mobius(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

/// Shared read-only table holding at least every prime <= limit.
std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint64_t limit);

namespace detail {
// Bit i of `words` <-> lo + i. lo may be 0 here.
void fill_primes(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> words);
void fill_squarefree(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> words);
}  // namespace detail

/// Calls f(p) for every prime p in [lo, hi] in increasing order, sieving
/// one segment at a time.
template <class F>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, F&& f,
                    std::uint64_t segment = kDefaultSegmentSize) {
  std::vector<std::uint64_t> words;
  for (std::uint64_t start = lo; start <= hi;) {
    const std::uint64_t end = (hi - start < segment - 1) ? hi : start + segment - 1;
    words.assign((end - start + 64) / 64, 0);
    detail::fill_primes(start, end, words);
    for (std::size_t w = 0; w < words.size(); ++w) {
      for (std::uint64_t bits = words[w]; bits; bits &= bits - 1)
        f(start + w * 64 + static_cast<unsigned>(std::countr_zero(bits)));
    }
    if (end == hi) break;
    start = end + 1;
  }
}

std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi);

/// Primality and squarefreeness for every integer in [0, limit], plus the
/// sorted prime list. Built once and shared read-only.
class NumberTable {
 public:
  explicit NumberTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t n) const noexcept { return bit(prime_words_, n); }
  bool is_squarefree(std::uint64_t n) const noexcept { return bit(squarefree_words_, n); }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }

  /// Primes p with p <= x, as a prefix of primes().
  std::span<const std::uint64_t> primes_up_to(std::uint64_t x) const noexcept;

 private:
  static bool bit(const std::vector<std::uint64_t>& w, std::uint64_t n) noexcept {
    return (w[n >> 6] >> (n & 63)) & 1;
  }

  std::uint64_t limit_;
  std::vector<std::uint64_t> prime_words_;
  std::vector<std::uint64_t> squarefree_words_;
  std::vector<std::uint64_t> primes_;
};

}  // namespace psq::sieve
