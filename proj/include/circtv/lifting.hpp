#pragma once

// Neighbor statistics, unwrapping ("lifting") of phase images with small
// neighbor jumps, and the sufficient conditions for CPPA convergence to a
// global minimizer.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "circtv/phase_data.hpp"
#include "circtv/solver.hpp"

namespace circtv {

/// Raised when input data violates a documented precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest geodesic distance between 4-neighbors (adjacent samples in 1D).
double d_inf_neighbors(const PhaseImage& x);
double d_inf_neighbors(const PhaseSignal& x);

/// max_i d(x_i, f_i). Throws std::invalid_argument on shape mismatch.
double d_inf_between(const PhaseImage& x, const PhaseImage& f);
double d_inf_between(const PhaseSignal& x, const PhaseSignal& f);

struct LiftedImage {
  RealGrid values;
  double anchor = 0.0;       // values(0, 0)
  double base_offset = 0.0;  // anchor - x(0, 0); wrap(values - base_offset) == x
};

/// Real grid with values(0,0) = anchor and |values_p - values_q| = d(x_p, x_q)
/// for every pair of 4-neighbors. Built along the first row, then down each
/// column. Throws PreconditionError if some neighbor distance is >= pi/2.
LiftedImage lift(const PhaseImage& x, double anchor);

/// Same grid built down the first column, then along each row.
LiftedImage lift_column_first(const PhaseImage& x, double anchor);

/// Real-valued counterpart of energy_2d: 1/2 sum (x - f)^2 plus the weighted
/// absolute first, second and mixed differences.
double real_energy_2d(const RealGrid& x, const RealGrid& f, const Params2D& params);

/// Unweighted TV1 + TV2 (horizontal and vertical) + mixed TV2 of an image.
double total_variation_budget(const PhaseImage& x);

struct ConvergenceCheck {
  static constexpr double kLipschitz = 4.0;

  double d_inf_f = 0.0;
  double tv_budget = 0.0;
  double max_weight = 0.0;
  double epsilon = 0.0;
  double lambda_l2 = 0.0;   // l2 norm of lambda_1..lambda_K
  double lambda_inf = 0.0;  // max_k lambda_k
  double L = kLipschitz;
  int c = 15;

  /// d_inf_neighbors(f) < pi/8.
  bool neighbor_condition() const;
  /// tv_budget <= epsilon^2 / max_weight.
  bool budget_condition() const;
  /// sqrt(eps^2 + 2 |lambda|_2^2 L^2 c (c+1)) + 2 |lambda|_inf c L < pi/16.
  bool step_condition() const;
  /// Left side of the step condition.
  double step_bound() const;
  bool all() const { return neighbor_condition() && budget_condition() && step_condition(); }
};

/// Evaluates the three conditions for a 2D problem. The step-size norms use
/// the schedule lambda0 / k truncated at max_cycles. Throws
/// std::invalid_argument if epsilon <= 0.
ConvergenceCheck check_convergence_conditions(const PhaseImage& f, const Params2D& params,
                                              double lambda0, int max_cycles, double epsilon);

/// 1D variant (c = 6); the signal is treated as a 1 x N image.
ConvergenceCheck check_convergence_conditions(const PhaseSignal& f, const Params1D& params,
                                              double lambda0, int max_cycles, double epsilon);

}  // namespace circtv
