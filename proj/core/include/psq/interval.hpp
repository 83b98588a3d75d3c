#pragma once

// Closed intervals of long double with outward rounding.
//
// Every arithmetic result is computed in round-to-nearest and then widened
// by one ulp in each direction, which encloses the exact result because the
// basic operations are correctly rounded. libm transcendental functions are
// widened by kLibmUlps instead.

#include <cmath>
#include <cstdint>
#include <limits>

namespace psq {

using Real = long double;

class Interval {
 public:
  static constexpr int kLibmUlps = 4;

  constexpr Interval() = default;
  constexpr Interval(Real point) : lo_(point), hi_(point) {}  // NOLINT: implicit by intent
  Interval(Real lo, Real hi);

  /// Smallest interval guaranteed to hold the exact value of an integer.
  static Interval exact(std::uint64_t n);
  /// Interval enclosing a decimal that was rounded to the nearest Real.
  static Interval rounded(Real nearest);

  Real lo() const noexcept { return lo_; }
  Real hi() const noexcept { return hi_; }
  Real mid() const noexcept { return lo_ + (hi_ - lo_) / 2; }
  Real width() const noexcept { return hi_ - lo_; }
  bool contains(Real x) const noexcept { return lo_ <= x && x <= hi_; }
  bool positive() const noexcept { return lo_ > 0; }

  friend bool operator==(const Interval&, const Interval&) = default;

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

 private:
  Real lo_ = 0;
  Real hi_ = 0;
};

Real round_down(Real x, int ulps = 1);
Real round_up(Real x, int ulps = 1);

Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
/// x^y for x > 0.
Interval pow(const Interval& x, const Interval& y);
/// Union hull.
Interval hull(const Interval& a, const Interval& b);

/// pi enclosed to within one ulp.
Interval pi_interval();

}  // namespace psq
