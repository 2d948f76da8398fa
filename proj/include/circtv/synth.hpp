#pragma once

// Synthetic test data, wrapped Gaussian noise and the cyclic mean squared
// error.

#include <cstddef>
#include <cstdint>

#include "circtv/phase_data.hpp"

namespace circtv {

/// Piecewise test function on [0, 1] (before wrapping): a parabola, a linear
/// ramp crossing the seam, a wrapped linear segment, four constant stairs and
/// an exponential tail.
double signal_profile_1d(double x);

/// n samples of the profile at x_i = i / (n - 1), i = 0..n-1, wrapped.
/// Throws std::invalid_argument if n < 2.
PhaseSignal synth_signal_1d(std::size_t n);

struct SyntheticSurface {
  RealGrid unwrapped;
  PhaseImage wrapped;
};

/// Unwrapped height at normalized image coordinates u (column, left to right)
/// and v (row, top to bottom), both in [0, 1].
///
/// - plates: +2pi where u + v < 1 (upper left), -2pi otherwise
/// - stairs: in the quadrant u, v < 1/2, five steps 2pi, 8pi/5, ..., 2pi/5
///   ordered along the direction at angle pi/3 (measured with y pointing up)
/// - ellipse: center (0.55, 0.45), semi-axes 0.35 and 0.15, major axis at
///   angle pi/6; height ramps linearly from +2pi to -2pi along the major axis
/// - dent: center (0.75, 0.75), radius 9/50, spherical-cap profile of depth
///   4pi subtracted from the underlying height
double surface_profile_2d(double u, double v);

/// Samples the surface on an n x m grid (n rows). Throws
/// std::invalid_argument if n or m < 2.
SyntheticSurface synth_surface_2d(std::size_t n, std::size_t m);

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Standard normal draws: std::mt19937_64 seeded with `seed`, each output r
/// mapped to u = ((r >> 11) + 0.5) * 2^-53 in (0, 1), Box-Muller on
/// consecutive pairs (u1, u2) giving sqrt(-2 ln u1) cos(2 pi u2) and then
/// sqrt(-2 ln u1) sin(2 pi u2).
std::vector<double> standard_normals(std::size_t count, std::uint64_t seed);

/// wrap(x_i + sigma * z_i). Throws std::invalid_argument if sigma is negative
/// or not finite.
PhaseSignal add_wrapped_gaussian(const PhaseSignal& x, const NoiseSpec& spec);
PhaseImage add_wrapped_gaussian(const PhaseImage& x, const NoiseSpec& spec);

/// Mean squared geodesic distance. Throws std::invalid_argument on shape
/// mismatch or empty input.
double cmse(const PhaseSignal& a, const PhaseSignal& b);
double cmse(const PhaseImage& a, const PhaseImage& b);

}  // namespace circtv
