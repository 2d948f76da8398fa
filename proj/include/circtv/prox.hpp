#pragma once

// Closed-form proximal mappings of linear differences on R^d and of absolute
// cyclic differences on circle-valued vectors.
//
// Penalty convention for the cyclic maps: the objective minimized by
// prox_cyclic_diff is
//
//     1/2 * sum_j d(x_j, f_j)^2 + lambda * d(x; w)^p / p
//
// i.e. the plain absolute difference for p = 1 and half its square for p = 2.
// With this normalization the p = 2 minimizer is the Sherman-Morrison shrink
// f - lambda * wrap(<f,w>) / (1 + lambda * |w|^2) * w.

#include <optional>
#include <span>
#include <vector>

#include "circtv/difference.hpp"

namespace circtv {

struct ProxConfig {
  double lambda = 1.0;
  int p = 1;
  double seam_tolerance = 1e-9;

  /// Throws std::invalid_argument unless lambda > 0, p in {1, 2} and the
  /// tolerance is non-negative.
  void validate() const;
};

struct RealProxResult {
  std::vector<double> minimizer;
  double minimum_value = 0.0;
};

struct ProxResult {
  std::vector<double> primary_minimizer;
  /// Present only when |wrap(<f, w>)| equals pi within the seam tolerance.
  std::optional<std::vector<double>> secondary_minimizer;
  double minimum_value = 0.0;
};

/// argmin_x 1/2 |f - x|^2 + lambda |<x, w> - a|  (soft shrinkage along w).
RealProxResult prox_linear_abs_real(std::span<const double> f, const DifferenceWeight& w,
                                    double a, double lambda);

/// argmin_x |f - x|^2 + lambda (<x, w> - a)^2.
RealProxResult prox_linear_sq_real(std::span<const double> f, const DifferenceWeight& w,
                                   double a, double lambda);

/// Objective of prox_cyclic_diff evaluated at x (see the header comment).
double cyclic_prox_objective(std::span<const double> x, std::span<const double> f,
                             const DifferenceWeight& w, double lambda, int p);

/// Proximal map of the absolute cyclic difference for w in {b1, b2, b11}.
/// Inputs are wrapped first; outputs are canonical. The primary minimizer is
/// wrap(f - t w) with the shift t taken from wrap(<f, w>); in the antipodal
/// case the mirrored point wrap(f + t w) is reported as the secondary one.
ProxResult prox_cyclic_diff(std::span<const double> f, const DifferenceWeight& w,
                            const ProxConfig& cfg);

/// Componentwise minimizer of d(g, x)^2 + lambda d(f, x)^2: the point that
/// splits the shorter arc from g to f in the ratio lambda : 1.
std::vector<double> prox_data_sq(std::span<const double> g, std::span<const double> f,
                                 double lambda);

}  // namespace circtv
