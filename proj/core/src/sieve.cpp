#include "psq/sieve.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>

#include "psq/arith.hpp"
#include "psq/error.hpp"

namespace psq::sieve {
namespace {

constexpr std::array<char, 8> kMagic = {'P', 'S', 'Q', 'S', 'E', 'G', '0', '1'};

void clear_bit(std::span<std::uint64_t> words, std::uint64_t i) {
  words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void set_all(std::span<std::uint64_t> words, std::uint64_t size) {
  std::fill(words.begin(), words.end(), ~std::uint64_t{0});
  if (size % 64) words[size / 64] = (std::uint64_t{1} << (size % 64)) - 1;
}

void validate_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options,
                    const char* op) {
  if (lo < 1 || lo > hi)
    throw InvalidArgument(std::string(op) + ": need 1 <= lo <= hi");
  if (hi > kMaxSieveValue) throw InvalidArgument(std::string(op) + ": hi beyond 2^63");
  if (hi - lo >= options.max_span)
    throw ResourceError(std::string(op) + ": segment of " + std::to_string(hi - lo + 1) +
                        " elements exceeds the configured budget of " +
                        std::to_string(options.max_span));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw ParseError("truncated bitmap", 0);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::Prime: return "prime";
    case Kind::Squarefree: return "squarefree";
    case Kind::MobiusValues: return "mobius";
  }
  return "unknown";
}

SegmentBitmap::SegmentBitmap(Kind kind, std::uint64_t lo, std::uint64_t hi)
    : kind_(kind), lo_(lo), hi_(hi) {
  if (lo > hi) throw InvalidArgument("SegmentBitmap: lo > hi");
  if (kind == Kind::MobiusValues)
    mu_.assign(size(), 0);
  else
    words_.assign((size() + 63) / 64, 0);
}

bool SegmentBitmap::test(std::uint64_t n) const {
  if (n < lo_ || n > hi_) throw InvalidArgument("SegmentBitmap::test: out of range");
  if (kind_ == Kind::MobiusValues) return mu_[n - lo_] != 0;
  const std::uint64_t i = n - lo_;
  return (words_[i >> 6] >> (i & 63)) & 1;
}

int SegmentBitmap::mobius(std::uint64_t n) const {
  if (kind_ != Kind::MobiusValues) throw InvalidArgument("SegmentBitmap::mobius: not a Mobius bitmap");
  if (n < lo_ || n > hi_) throw InvalidArgument("SegmentBitmap::mobius: out of range");
  return mu_[n - lo_];
}

std::uint64_t SegmentBitmap::count() const noexcept {
  if (kind_ == Kind::MobiusValues)
    return static_cast<std::uint64_t>(std::count_if(mu_.begin(), mu_.end(), [](std::int8_t v) { return v != 0; }));
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<std::uint64_t> SegmentBitmap::members() const {
  std::vector<std::uint64_t> out;
  if (kind_ == Kind::MobiusValues) {
    for (std::uint64_t i = 0; i < mu_.size(); ++i)
      if (mu_[i]) out.push_back(lo_ + i);
    return out;
  }
  for (std::size_t w = 0; w < words_.size(); ++w)
    for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
      out.push_back(lo_ + w * 64 + static_cast<unsigned>(std::countr_zero(bits)));
  return out;
}

void SegmentBitmap::dump(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  const char kind_block[8] = {static_cast<char>(kind_), 0, 0, 0, 0, 0, 0, 0};
  out.write(kind_block, 8);
  put_u64(out, lo_);
  put_u64(out, hi_);
  if (kind_ == Kind::MobiusValues)
    out.write(reinterpret_cast<const char*>(mu_.data()), static_cast<std::streamsize>(mu_.size()));
  else
    for (std::uint64_t w : words_) put_u64(out, w);
  if (!out) throw Error("SegmentBitmap::dump: write failed");
}

SegmentBitmap SegmentBitmap::load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw ParseError("not a segment bitmap (bad magic)", 0);
  char kind_block[8];
  if (!in.read(kind_block, 8)) throw ParseError("truncated bitmap header", 0);
  const auto kind = static_cast<Kind>(kind_block[0]);
  if (kind != Kind::Prime && kind != Kind::Squarefree && kind != Kind::MobiusValues)
    throw ParseError("unknown bitmap kind " + std::to_string(kind_block[0]), 0);
  const std::uint64_t lo = get_u64(in);
  const std::uint64_t hi = get_u64(in);
  if (lo > hi || hi - lo >= SieveOptions{}.max_span) throw ParseError("invalid bitmap bounds", 0);
  SegmentBitmap bitmap(kind, lo, hi);
  if (kind == Kind::MobiusValues) {
    if (!in.read(reinterpret_cast<char*>(bitmap.mu_.data()), static_cast<std::streamsize>(bitmap.mu_.size())))
      throw ParseError("truncated bitmap payload", 0);
    for (std::int8_t v : bitmap.mu_)
      if (v < -1 || v > 1) throw ParseError("Mobius entry outside {-1,0,1}", 0);
  } else {
    for (auto& w : bitmap.words_) w = get_u64(in);
    const std::uint64_t tail = bitmap.size() % 64;
    if (tail && (bitmap.words_.back() >> tail)) throw ParseError("bits set beyond hi", 0);
  }
  return bitmap;
}

std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<std::uint32_t>> cached;
  static std::uint64_t cached_limit = 0;

  std::lock_guard lock(mutex);
  if (cached && cached_limit >= limit) return cached;
  const std::uint64_t target = std::max<std::uint64_t>(limit, 1 << 16);
  std::vector<bool> composite(target + 1, false);
  auto primes = std::make_shared<std::vector<std::uint32_t>>();
  for (std::uint64_t i = 2; i <= target; ++i) {
    if (composite[i]) continue;
    primes->push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= target; j += i) composite[j] = true;
  }
  cached = std::move(primes);
  cached_limit = target;
  return cached;
}

namespace detail {

void fill_primes(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> words) {
  const std::uint64_t size = hi - lo + 1;
  set_all(words, size);
  const auto base = base_primes(arith::isqrt(hi));
  for (std::uint64_t p : *base) {
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j <= hi; j += p) clear_bit(words, j - lo);
  }
  for (std::uint64_t n = lo; n <= std::min<std::uint64_t>(hi, 1); ++n) clear_bit(words, n - lo);
}

void fill_squarefree(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> words) {
  const std::uint64_t size = hi - lo + 1;
  set_all(words, size);
  const auto base = base_primes(arith::isqrt(hi));
  for (std::uint64_t p : *base) {
    const std::uint64_t sq = p * p;
    if (sq > hi) break;
    for (std::uint64_t j = (lo + sq - 1) / sq * sq; j <= hi; j += sq) clear_bit(words, j - lo);
  }
  if (lo == 0) clear_bit(words, 0);
}

}  // namespace detail

SegmentBitmap sieve_primes(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  validate_range(lo, hi, options, "sieve_primes");
  SegmentBitmap bitmap(Kind::Prime, lo, hi);
  detail::fill_primes(lo, hi, bitmap.words());
  return bitmap;
}

SegmentBitmap sieve_squarefree(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  validate_range(lo, hi, options, "sieve_squarefree");
  SegmentBitmap bitmap(Kind::Squarefree, lo, hi);
  detail::fill_squarefree(lo, hi, bitmap.words());
  return bitmap;
}

SegmentBitmap sieve_mobius(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  validate_range(lo, hi, options, "sieve_mobius");
  SegmentBitmap bitmap(Kind::MobiusValues, lo, hi);
  auto mu = bitmap.mobius_values();
  const auto base = base_primes(arith::isqrt(hi));

  // Product of the small prime factors found so far, processed in chunks to
  // bound the scratch memory.
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 20;
  std::vector<std::uint64_t> product;
  for (std::uint64_t clo = lo; clo <= hi;) {
    const std::uint64_t chi = (hi - clo < kChunk - 1) ? hi : clo + kChunk - 1;
    const std::uint64_t offset = clo - lo;
    product.assign(chi - clo + 1, 1);
    std::fill(mu.begin() + static_cast<std::ptrdiff_t>(offset),
              mu.begin() + static_cast<std::ptrdiff_t>(offset + chi - clo + 1), 1);
    for (std::uint64_t p : *base) {
      if (p * p > chi) break;
      for (std::uint64_t j = (clo + p - 1) / p * p; j <= chi; j += p) {
        mu[offset + (j - clo)] = static_cast<std::int8_t>(-mu[offset + (j - clo)]);
        product[j - clo] *= p;
      }
      const std::uint64_t sq = p * p;
      for (std::uint64_t j = (clo + sq - 1) / sq * sq; j <= chi; j += sq) mu[offset + (j - clo)] = 0;
    }
    for (std::uint64_t n = clo; n <= chi; ++n) {
      auto& v = mu[offset + (n - clo)];
      if (v != 0 && product[n - clo] != n) v = static_cast<std::int8_t>(-v);
    }
    if (chi == hi) break;
    clo = chi + 1;
  }
  return bitmap;
}

std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t count = 0;
  for_each_prime(lo, hi, [&](std::uint64_t) { ++count; });
  return count;
}

NumberTable::NumberTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 1 || limit > (std::uint64_t{1} << 40))
    throw InvalidArgument("NumberTable: limit must lie in [1, 2^40]");
  const std::uint64_t nwords = (limit + 64) / 64;
  prime_words_.assign(nwords, 0);
  squarefree_words_.assign(nwords, 0);
  static_assert(kDefaultSegmentSize % 64 == 0);
  for (std::uint64_t start = 0; start <= limit; start += kDefaultSegmentSize) {
    const std::uint64_t end = std::min(limit, start + kDefaultSegmentSize - 1);
    const std::uint64_t w0 = start / 64, wn = (end - start + 64) / 64;
    detail::fill_primes(start, end, std::span(prime_words_).subspan(w0, wn));
    detail::fill_squarefree(start, end, std::span(squarefree_words_).subspan(w0, wn));
  }
  for (std::size_t w = 0; w < prime_words_.size(); ++w)
    for (std::uint64_t bits = prime_words_[w]; bits; bits &= bits - 1)
      primes_.push_back(w * 64 + static_cast<unsigned>(std::countr_zero(bits)));
}

std::span<const std::uint64_t> NumberTable::primes_up_to(std::uint64_t x) const noexcept {
  const auto end = std::upper_bound(primes_.begin(), primes_.end(), x);
  return std::span(primes_.data(), static_cast<std::size_t>(end - primes_.begin()));
}

}  // namespace psq::sieve
