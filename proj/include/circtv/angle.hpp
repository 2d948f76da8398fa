#pragma once

// Wrap-around arithmetic on the circle S^1.
//
// Points of the circle are represented by their canonical real representative
// in the half-open interval [-pi, pi). Odd multiples of pi map to -pi.

#include <cmath>
#include <numbers>

namespace circtv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Magnitude up to which the fast reduction below is used. SIMD kernels only
/// ever see arguments far inside this range.
inline constexpr double kFastWrapLimit = 1.0e6;

/// Reduction step shared by the scalar and SIMD kernels: nearest-integer
/// quotient, then one correction on each side. Valid for |x| <= kFastWrapLimit.
inline double wrap_reduce(double x) noexcept {
  const double k = std::nearbyint(x / kTwoPi);
  double r = x - k * kTwoPi;
  if (r < -kPi) r += kTwoPi;
  if (r >= kPi) r -= kTwoPi;
  return r;
}

/// Canonical representative of x modulo 2*pi, without the finiteness check.
inline double wrap_unchecked(double x) noexcept {
  if (std::abs(x) <= kFastWrapLimit) return wrap_reduce(x);
  // exact IEEE remainder; lands in [-pi, pi]
  const double r = std::remainder(x, kTwoPi);
  return r >= kPi ? r - kTwoPi : r;
}

/// Canonical representative in [-pi, pi). Throws std::invalid_argument for
/// NaN or infinite input.
double wrap(double x);

/// Sign with sgn(0) = 0.
inline constexpr double sgn(double x) noexcept {
  return static_cast<double>((x > 0.0) - (x < 0.0));
}

/// Arc-length distance |wrap(q - p)|, in [0, pi].
inline double geodesic_distance(double p, double q) noexcept {
  return std::abs(wrap_unchecked(q - p));
}

/// A point of S^1 held by its canonical representative.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(wrap(radians)) {}

  constexpr double value() const noexcept { return value_; }
  explicit constexpr operator double() const noexcept { return value_; }

  friend Angle operator+(Angle a, Angle b) { return Angle(a.value_ + b.value_); }
  friend Angle operator-(Angle a, Angle b) { return Angle(a.value_ - b.value_); }
  friend Angle operator-(Angle a) { return Angle(-a.value_); }
  friend constexpr bool operator==(Angle a, Angle b) noexcept = default;

 private:
  double value_ = 0.0;
};

inline double geodesic_distance(Angle p, Angle q) noexcept {
  return geodesic_distance(p.value(), q.value());
}

}  // namespace circtv
