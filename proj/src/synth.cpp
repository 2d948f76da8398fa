#include "circtv/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "circtv/angle.hpp"

namespace circtv {

namespace {

constexpr double kPlate = kTwoPi;
constexpr int kStairCount = 5;

struct Ellipse {
  double cu = 0.55, cv = 0.45;
  double major = 0.35, minor = 0.15;
  // major axis at pi/6 with y up, i.e. (cos, -sin) in (u, v)
  double du = std::cos(kPi / 6), dv = -std::sin(kPi / 6);
};

constexpr double kDentU = 0.75;
constexpr double kDentV = 0.75;
constexpr double kDentRadius = 9.0 / 50.0;
constexpr double kDentDepth = 4.0 * kPi;

double stair_height(double u, double v) {
  // direction pi/3 with y up
  const double du = std::cos(kPi / 3);
  const double dv = -std::sin(kPi / 3);
  const double lo = 0.5 * dv;  // projection at (0, 1/2)
  const double hi = 0.5 * du;  // projection at (1/2, 0)
  const double t = (u * du + v * dv - lo) / (hi - lo);
  const int k = std::min(kStairCount - 1, static_cast<int>(std::floor(kStairCount * t)));
  return kPlate - std::max(0, k) * (kTwoPi / kStairCount);
}

double mean_sq(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cmse: shape mismatch");
  if (a.empty()) throw std::invalid_argument("cmse: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = geodesic_distance(a[i], b[i]);
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

std::vector<double> noisy_values(std::span<const double> x, const NoiseSpec& spec) {
  if (!std::isfinite(spec.sigma) || spec.sigma < 0.0) {
    throw std::invalid_argument("noise sigma must be finite and non-negative");
  }
  std::vector<double> out(x.begin(), x.end());
  if (spec.sigma == 0.0) return out;
  const std::vector<double> z = standard_normals(x.size(), spec.seed);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = wrap(out[i] + spec.sigma * z[i]);
  return out;
}

}  // namespace

double signal_profile_1d(double x) {
  if (x <= 0.25) return -24.0 * kPi * x * x + 0.75 * kPi;
  if (x <= 0.375) return 4.0 * kPi * x - kPi / 4;
  if (x <= 0.5) return wrap(-kPi * x - 3.0 / 8.0);
  for (int j = 0; j < 4; ++j) {
    if (x <= (3.0 * j + 19.0) / 32.0) return wrap(-(j + 7.0) / 8.0 * kPi);
  }
  if (x >= 1.0) return -0.75 * kPi;
  return 1.5 * kPi * std::exp(-35.0 / 7.0 - 1.0 / (1.0 - x)) - 0.75 * kPi;
}

PhaseSignal synth_signal_1d(std::size_t n) {
  if (n < 2) throw std::invalid_argument("synth_signal_1d: need at least 2 samples");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = signal_profile_1d(static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return PhaseSignal(std::move(v));
}

double surface_profile_2d(double u, double v) {
  double h = (u + v < 1.0) ? kPlate : -kPlate;
  if (u < 0.5 && v < 0.5) h = stair_height(u, v);

  const Ellipse e;
  const double ru = u - e.cu;
  const double rv = v - e.cv;
  const double along = ru * e.du + rv * e.dv;
  const double across = -ru * e.dv + rv * e.du;
  if ((along / e.major) * (along / e.major) + (across / e.minor) * (across / e.minor) <= 1.0) {
    h = -kPlate * std::clamp(along / e.major, -1.0, 1.0);
  }

  const double r = std::hypot(u - kDentU, v - kDentV);
  if (r < kDentRadius) {
    const double q = r / kDentRadius;
    h -= kDentDepth * std::sqrt(1.0 - q * q);
  }
  return h;
}

SyntheticSurface synth_surface_2d(std::size_t n, std::size_t m) {
  if (n < 2 || m < 2) throw std::invalid_argument("synth_surface_2d: need at least 2 x 2 pixels");
  SyntheticSurface s;
  s.unwrapped = RealGrid{n, m, std::vector<double>(n * m)};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = static_cast<double>(i) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < m; ++j) {
      const double u = static_cast<double>(j) / static_cast<double>(m - 1);
      s.unwrapped(i, j) = surface_profile_2d(u, v);
    }
  }
  s.wrapped = wrap_grid(s.unwrapped);
  return s;
}

std::vector<double> standard_normals(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<double> z(count);
  for (std::size_t i = 0; i < count; i += 2) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    z[i] = r * std::cos(kTwoPi * u2);
    if (i + 1 < count) z[i + 1] = r * std::sin(kTwoPi * u2);
  }
  return z;
}

PhaseSignal add_wrapped_gaussian(const PhaseSignal& x, const NoiseSpec& spec) {
  return PhaseSignal(noisy_values(x.samples(), spec));
}

PhaseImage add_wrapped_gaussian(const PhaseImage& x, const NoiseSpec& spec) {
  return PhaseImage(x.rows(), x.cols(), noisy_values(x.pixels(), spec));
}

double cmse(const PhaseSignal& a, const PhaseSignal& b) {
  return mean_sq(a.samples(), b.samples());
}

double cmse(const PhaseImage& a, const PhaseImage& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("cmse: shape mismatch");
  }
  return mean_sq(a.pixels(), b.pixels());
}

}  // namespace circtv
