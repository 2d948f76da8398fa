#pragma once

// Per-block proximal updates shared by the public prox API and the scalar
// kernels. The SIMD kernels replicate these operation sequences lane by lane,
// so any change here must be mirrored in kernels_avx2.cpp.

#include <algorithm>
#include <cmath>

#include "circtv/angle.hpp"

namespace circtv::detail {

/// Shift t such that the block update is x = wrap(f - t * w), given the
/// wrapped difference delta = wrap(<f, w>) and the squared norm of w.
/// p = 1: soft shrinkage. p = 2: Sherman-Morrison shrinkage.
inline double shrink_shift(double wrapped_delta, double lambda, double w_sq_norm, int p) noexcept {
  if (p == 1) {
    return sgn(wrapped_delta) * std::min(lambda, std::abs(wrapped_delta) / w_sq_norm);
  }
  return lambda * wrapped_delta / (1.0 + lambda * w_sq_norm);
}

// b1 = (-1, 1)
inline void prox_pair(double& a, double& b, double lambda, int p) noexcept {
  const double t = shrink_shift(wrap_reduce(b - a), lambda, 2.0, p);
  a = wrap_reduce(a + t);
  b = wrap_reduce(b - t);
}

// b2 = (1, -2, 1)
inline void prox_triple(double& a, double& b, double& c, double lambda, int p) noexcept {
  const double t = shrink_shift(wrap_reduce((a - 2.0 * b) + c), lambda, 6.0, p);
  a = wrap_reduce(a - t);
  b = wrap_reduce(b + 2.0 * t);
  c = wrap_reduce(c - t);
}

// b11 = (-1, 1, 1, -1)
inline void prox_quad(double& a, double& b, double& c, double& d, double lambda, int p) noexcept {
  const double t = shrink_shift(wrap_reduce((b - a) + (c - d)), lambda, 4.0, p);
  a = wrap_reduce(a + t);
  b = wrap_reduce(b - t);
  c = wrap_reduce(c - t);
  d = wrap_reduce(d + t);
}

/// Minimizer of d(g, x)^2 + lambda * d(f, x)^2 over the circle. At
/// |g - f| = pi exactly the branch v = 0 is taken.
inline double prox_data_point(double g, double f, double lambda) noexcept {
  const double diff = g - f;
  const double v = std::abs(diff) > kPi ? sgn(diff) : 0.0;
  const double coef = lambda / (1.0 + lambda);
  return wrap_reduce(g + coef * ((f - g) + kTwoPi * v));
}

}  // namespace circtv::detail
