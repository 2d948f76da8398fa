#include "circtv/prox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "circtv/angle.hpp"
#include "circtv/detail/block_ops.hpp"

namespace circtv {

namespace {

void require_positive_lambda(double lambda, const char* what) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(std::string(what) + ": lambda must be positive and finite");
  }
}

void require_length(std::size_t n, const DifferenceWeight& w, const char* what) {
  if (n != w.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(n) +
                                " vs " + std::to_string(w.size()) + ")");
  }
}

std::vector<double> wrapped_copy(std::span<const double> f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = wrap(f[i]);
  return out;
}

// x = wrap(f - t w) via the block updates shared with the solver kernels.
std::vector<double> apply_named(std::vector<double> x, const DifferenceWeight& w, double lambda,
                                int p) {
  switch (w.order()) {
    case DifferenceOrder::first:
      detail::prox_pair(x[0], x[1], lambda, p);
      break;
    case DifferenceOrder::second:
      detail::prox_triple(x[0], x[1], x[2], lambda, p);
      break;
    case DifferenceOrder::mixed:
      detail::prox_quad(x[0], x[1], x[2], x[3], lambda, p);
      break;
    case DifferenceOrder::general:
      throw std::logic_error("apply_named: unnamed weight");
  }
  return x;
}

}  // namespace

void ProxConfig::validate() const {
  require_positive_lambda(lambda, "ProxConfig");
  if (p != 1 && p != 2) throw std::invalid_argument("ProxConfig: p must be 1 or 2");
  if (!(seam_tolerance >= 0.0)) throw std::invalid_argument("ProxConfig: negative seam tolerance");
}

RealProxResult prox_linear_abs_real(std::span<const double> f, const DifferenceWeight& w,
                                    double a, double lambda) {
  require_positive_lambda(lambda, "prox_linear_abs_real");
  require_length(f.size(), w, "prox_linear_abs_real");
  const double nw2 = w.squared_norm();
  const double r = delta(f, w) - a;
  const double mu = r / nw2;
  const double m = std::min(lambda, std::abs(mu));
  const double s = sgn(r);

  RealProxResult out;
  out.minimizer.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.minimizer[i] = f[i] - s * m * w[i];
  out.minimum_value = std::abs(mu) <= lambda
                          ? nw2 * 0.5 * mu * mu
                          : nw2 * (0.5 * lambda * lambda + lambda * (std::abs(mu) - lambda));
  return out;
}

RealProxResult prox_linear_sq_real(std::span<const double> f, const DifferenceWeight& w,
                                   double a, double lambda) {
  require_positive_lambda(lambda, "prox_linear_sq_real");
  require_length(f.size(), w, "prox_linear_sq_real");
  const double nw2 = w.squared_norm();
  const double r = delta(f, w) - a;
  const double t = lambda * r / (1.0 + lambda * nw2);

  RealProxResult out;
  out.minimizer.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.minimizer[i] = f[i] - t * w[i];
  out.minimum_value = lambda / (1.0 + lambda * nw2) * r * r;
  return out;
}

double cyclic_prox_objective(std::span<const double> x, std::span<const double> f,
                             const DifferenceWeight& w, double lambda, int p) {
  require_length(x.size(), w, "cyclic_prox_objective");
  require_length(f.size(), w, "cyclic_prox_objective");
  double data = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = geodesic_distance(wrap(x[i]), wrap(f[i]));
    data += d * d;
  }
  const double dw = w.is_named() ? abs_cyclic_diff_closed(x, w) : abs_cyclic_diff_general(x, w);
  const double penalty = p == 1 ? dw : 0.5 * dw * dw;
  return 0.5 * data + lambda * penalty;
}

ProxResult prox_cyclic_diff(std::span<const double> f, const DifferenceWeight& w,
                            const ProxConfig& cfg) {
  cfg.validate();
  if (!w.is_named()) {
    throw std::invalid_argument("prox_cyclic_diff: weight must be b1, b2 or b11");
  }
  require_length(f.size(), w, "prox_cyclic_diff");

  const std::vector<double> g = wrapped_copy(f);
  ProxResult out;
  out.primary_minimizer = apply_named(g, w, cfg.lambda, cfg.p);
  out.minimum_value = cyclic_prox_objective(out.primary_minimizer, g, w, cfg.lambda, cfg.p);

  const double wrapped = wrap(delta(g, w));
  if (std::abs(wrapped) >= kPi - cfg.seam_tolerance) {
    // Mirror of the primary shift: f + t w instead of f - t w.
    const double t = detail::shrink_shift(wrapped, cfg.lambda, w.squared_norm(), cfg.p);
    std::vector<double> mirrored(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) mirrored[i] = wrap(g[i] + t * w[i]);
    out.secondary_minimizer = std::move(mirrored);
  }
  return out;
}

std::vector<double> prox_data_sq(std::span<const double> g, std::span<const double> f,
                                 double lambda) {
  require_positive_lambda(lambda, "prox_data_sq");
  if (g.size() != f.size()) {
    throw std::invalid_argument("prox_data_sq: length mismatch (" + std::to_string(g.size()) +
                                " vs " + std::to_string(f.size()) + ")");
  }
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = detail::prox_data_point(wrap(g[i]), wrap(f[i]), lambda);
  }
  return out;
}

}  // namespace circtv
