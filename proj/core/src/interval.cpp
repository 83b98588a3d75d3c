#include "psq/interval.hpp"

#include <algorithm>
#include <numbers>

#include "psq/error.hpp"

namespace psq {

Real round_down(Real x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<Real>::infinity());
  return x;
}

Real round_up(Real x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<Real>::infinity());
  return x;
}

Interval::Interval(Real lo, Real hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw InvalidArgument("Interval: lower endpoint exceeds upper endpoint");
}

Interval Interval::exact(std::uint64_t n) {
  // 64-bit significand: every uint64 converts exactly.
  return Interval(static_cast<Real>(n));
}

Interval Interval::rounded(Real nearest) { return Interval(round_down(nearest), round_up(nearest)); }

Interval& Interval::operator+=(const Interval& o) {
  lo_ = round_down(lo_ + o.lo_);
  hi_ = round_up(hi_ + o.hi_);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  const Real lo = round_down(lo_ - o.hi_);
  hi_ = round_up(hi_ - o.lo_);
  lo_ = lo;
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const Real a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
  lo_ = round_down(std::min({a, b, c, d}));
  hi_ = round_up(std::max({a, b, c, d}));
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.lo_ <= 0 && o.hi_ >= 0) throw InvalidArgument("Interval: division by an interval containing 0");
  const Real a = lo_ / o.lo_, b = lo_ / o.hi_, c = hi_ / o.lo_, d = hi_ / o.hi_;
  lo_ = round_down(std::min({a, b, c, d}));
  hi_ = round_up(std::max({a, b, c, d}));
  return *this;
}

Interval log(const Interval& x) {
  if (x.lo() <= 0) throw InvalidArgument("log: interval must be positive");
  return Interval(round_down(std::log(x.lo()), Interval::kLibmUlps),
                  round_up(std::log(x.hi()), Interval::kLibmUlps));
}

Interval exp(const Interval& x) {
  return Interval(std::max<Real>(0, round_down(std::exp(x.lo()), Interval::kLibmUlps)),
                  round_up(std::exp(x.hi()), Interval::kLibmUlps));
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0) throw InvalidArgument("sqrt: interval must be nonnegative");
  return Interval(std::max<Real>(0, round_down(std::sqrt(x.lo()))), round_up(std::sqrt(x.hi())));
}

Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval pi_interval() { return Interval::rounded(std::numbers::pi_v<Real>); }

}  // namespace psq
