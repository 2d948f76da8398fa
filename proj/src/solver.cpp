#include "circtv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "circtv/angle.hpp"
#include "circtv/splitting.hpp"

namespace circtv {

namespace {

void check_weight(double w, const char* name) {
  if (!std::isfinite(w) || w < 0.0) {
    throw std::invalid_argument(std::string(name) + " must be finite and non-negative");
  }
}

void check_common(double lambda0, int max_cycles, int p) {
  if (!std::isfinite(lambda0) || lambda0 <= 0.0) {
    throw std::invalid_argument("lambda0 must be positive");
  }
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
  if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
}

double penalty(double d, int p) { return p == 1 ? d : 0.5 * d * d; }

double tv_pair(double a, double b, int p) { return penalty(std::abs(wrap_unchecked(b - a)), p); }

double tv_triple(double a, double b, double c, int p) {
  return penalty(std::abs(wrap_unchecked((a - 2.0 * b) + c)), p);
}

double tv_quad(double a, double b, double c, double d, int p) {
  return penalty(std::abs(wrap_unchecked((b - a) + (c - d))), p);
}

double data_energy(std::span<const double> x, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = geodesic_distance(x[i], f[i]);
    s += d * d;
  }
  return 0.5 * s;
}

double cyclic_l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = geodesic_distance(a[i], b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

double max_deviation(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, geodesic_distance(a[i], b[i]));
  return m;
}

void require_extent(bool active, std::size_t extent, std::size_t needed, const char* what) {
  if (active && extent < needed) {
    throw std::invalid_argument(std::string(what) + " requires at least " +
                                std::to_string(needed) + " samples, got " +
                                std::to_string(extent));
  }
}

// Shared cycle loop. `step` applies substep l with step size lambda_k.
template <class Data, class Step, class Energy>
SolveReport<Data> run_cycles(const Data& f, Data x, int cycle_length, int max_cycles,
                             double lambda0, const SolveOptions& options,
                             const BlockKernels& kernels, Step step, Energy energy) {
  SolveReport<Data> report;
  report.kernel = std::string(kernels.name);
  const std::size_t n = f.size();
  std::vector<double> previous(n);
  for (int k = 1; k <= max_cycles; ++k) {
    auto cur = x.mutable_pixels_or_samples();
    std::copy(cur.begin(), cur.end(), previous.begin());
    const double lambda = cycle_lambda(lambda0, k);
    for (int l = 1; l <= cycle_length; ++l) {
      step(l, cur, lambda);
      if (options.on_substep) options.on_substep(k, l, std::span<const double>(cur));
    }
    const double change = cyclic_l2(cur, previous);
    report.change_trace.push_back(change);
    report.deviation_trace.push_back(max_deviation(cur, f.values_view()));
    if (options.record_energy) report.energy_trace.push_back(energy(x));
    report.cycles_run = k;
    if (options.early_stop_change > 0.0 && change < options.early_stop_change) break;
  }
  report.result = std::move(x);
  return report;
}

// Uniform access to the sample buffer of signals and images.
struct SignalView {
  PhaseSignal data;
  std::size_t size() const { return data.size(); }
  std::span<double> mutable_pixels_or_samples() { return data.mutable_samples(); }
  std::span<const double> values_view() const { return data.samples(); }
};

struct ImageView {
  PhaseImage data;
  std::size_t size() const { return data.size(); }
  std::span<double> mutable_pixels_or_samples() { return data.mutable_pixels(); }
  std::span<const double> values_view() const { return data.pixels(); }
};

}  // namespace

void Params1D::validate() const {
  check_weight(alpha, "alpha");
  check_weight(beta, "beta");
  if (alpha == 0.0 && beta == 0.0) throw std::invalid_argument("alpha and beta are both zero");
  check_common(lambda0, max_cycles, p);
}

double Params2D::max_weight() const noexcept {
  return std::max({alpha1, alpha2, beta1, beta2, gamma});
}

void Params2D::validate() const {
  check_weight(alpha1, "alpha1");
  check_weight(alpha2, "alpha2");
  check_weight(beta1, "beta1");
  check_weight(beta2, "beta2");
  check_weight(gamma, "gamma");
  if (max_weight() == 0.0) throw std::invalid_argument("all regularization weights are zero");
  check_common(lambda0, max_cycles, p);
}

double energy_1d(const PhaseSignal& x, const PhaseSignal& f, const Params1D& params) {
  if (x.size() != f.size()) throw std::invalid_argument("energy_1d: length mismatch");
  const auto v = x.samples();
  const std::size_t n = v.size();
  const int p = params.p;
  double tv1 = 0.0;
  double tv2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) tv1 += tv_pair(v[i], v[i + 1], p);
  for (std::size_t i = 0; i + 2 < n; ++i) tv2 += tv_triple(v[i], v[i + 1], v[i + 2], p);
  return data_energy(v, f.samples()) + params.alpha * tv1 + params.beta * tv2;
}

double energy_2d(const PhaseImage& x, const PhaseImage& f, const Params2D& params) {
  if (x.rows() != f.rows() || x.cols() != f.cols()) {
    throw std::invalid_argument("energy_2d: dimension mismatch");
  }
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  const int p = params.p;
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = x(i, j);
      if (i + 1 < n) a1 += tv_pair(c, x(i + 1, j), p);
      if (j + 1 < m) a2 += tv_pair(c, x(i, j + 1), p);
      if (i + 2 < n) b1 += tv_triple(c, x(i + 1, j), x(i + 2, j), p);
      if (j + 2 < m) b2 += tv_triple(c, x(i, j + 1), x(i, j + 2), p);
      if (i + 1 < n && j + 1 < m) g += tv_quad(c, x(i + 1, j), x(i, j + 1), x(i + 1, j + 1), p);
    }
  }
  return data_energy(x.pixels(), f.pixels()) + params.alpha1 * a1 + params.alpha2 * a2 +
         params.beta1 * b1 + params.beta2 * b2 + params.gamma * g;
}

SignalReport cppa_denoise_1d(const PhaseSignal& f, const Params1D& params,
                             const SolveOptions& options) {
  params.validate();
  if (f.empty()) throw std::invalid_argument("cppa_denoise_1d: empty signal");
  require_extent(params.alpha > 0.0, f.size(), 2, "first-order term");
  require_extent(params.beta > 0.0, f.size(), 3, "second-order term");

  const BlockKernels& kernels = select_kernels(options.isa);
  const SignalView fv{f};
  const auto fs = f.samples();
  auto step = [&](int l, std::span<double> x, double lambda) {
    prox_substep_1d(l, x, fs, lambda, params, kernels);
  };
  auto energy = [&](const SignalView& x) { return energy_1d(x.data, f, params); };
  auto view = run_cycles(fv, SignalView{f}, kCycleLength1D, params.max_cycles, params.lambda0,
                         options, kernels, step, energy);

  SignalReport report;
  report.result = std::move(view.result.data);
  report.energy_trace = std::move(view.energy_trace);
  report.change_trace = std::move(view.change_trace);
  report.deviation_trace = std::move(view.deviation_trace);
  report.cycles_run = view.cycles_run;
  report.kernel = std::move(view.kernel);
  return report;
}

ImageReport cppa_denoise_2d(const PhaseImage& f, const Params2D& params,
                            const SolveOptions& options) {
  params.validate();
  if (f.empty()) throw std::invalid_argument("cppa_denoise_2d: empty image");
  const std::size_t rows = f.rows();
  const std::size_t cols = f.cols();
  require_extent(params.alpha1 > 0.0 || params.gamma > 0.0, rows, 2, "vertical first-order term");
  require_extent(params.alpha2 > 0.0 || params.gamma > 0.0, cols, 2,
                 "horizontal first-order term");
  require_extent(params.beta1 > 0.0, rows, 3, "vertical second-order term");
  require_extent(params.beta2 > 0.0, cols, 3, "horizontal second-order term");

  const BlockKernels& kernels = select_kernels(options.isa);
  const ImageView fv{f};
  const auto fp = f.pixels();
  auto step = [&](int l, std::span<double> x, double lambda) {
    prox_substep_2d(l, x, fp, rows, cols, lambda, params, kernels);
  };
  auto energy = [&](const ImageView& x) { return energy_2d(x.data, f, params); };
  auto view = run_cycles(fv, ImageView{f}, kCycleLength2D, params.max_cycles, params.lambda0,
                         options, kernels, step, energy);

  ImageReport report;
  report.result = std::move(view.result.data);
  report.energy_trace = std::move(view.energy_trace);
  report.change_trace = std::move(view.change_trace);
  report.deviation_trace = std::move(view.deviation_trace);
  report.cycles_run = view.cycles_run;
  report.kernel = std::move(view.kernel);
  return report;
}

}  // namespace circtv
