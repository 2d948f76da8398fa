#pragma once

// Cyclic proximal point algorithm (CPPA) for first- and second-order TV
// functionals of circle-valued signals and images.
//
//   1D: J(x) = 1/2 sum d(f_i, x_i)^2 + alpha TV1(x) + beta TV2(x)
//   2D: J(x) = 1/2 sum d(f_ij, x_ij)^2 + alpha1 TV1_vertical + alpha2 TV1_horizontal
//              + beta1 TV2_vertical + beta2 TV2_horizontal + gamma TV2_mixed
//
// "Vertical" terms couple pixels (i, j) and (i+1, j) (first index), the
// "horizontal" ones (i, j) and (i, j+1). A 1 x M image therefore only sees
// alpha2, beta2. With p = 2 every difference enters as d^2 / 2.
//
// Cycle k (k = 1, 2, ...) uses the step lambda_k = lambda0 / k and applies
// the proximal maps of the split summands J_1..J_c in order, each one reading
// the iterate produced by the previous summand. See splitting.hpp for the
// block structure of each summand.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "circtv/kernels.hpp"
#include "circtv/phase_data.hpp"

namespace circtv {

struct Params1D {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda0 = 3.141592653589793;
  int max_cycles = 4000;
  int p = 1;

  /// Throws std::invalid_argument on negative or non-finite weights, when
  /// both weights vanish, lambda0 <= 0, max_cycles < 1 or p not in {1, 2}.
  void validate() const;
};

struct Params2D {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gamma = 0.0;
  double lambda0 = 3.141592653589793;
  int max_cycles = 4000;
  int p = 1;

  double max_weight() const noexcept;
  void validate() const;
};

struct SolveOptions {
  /// Evaluate J after every cycle. When false energy_trace stays empty.
  bool record_energy = true;
  /// Stop once the l2 change of a cycle drops below this value; <= 0 disables.
  double early_stop_change = 0.0;
  KernelIsa isa = KernelIsa::automatic;
  /// Called after every proximal substep with (cycle, substep l, iterate).
  std::function<void(int, int, std::span<const double>)> on_substep;
};

template <class Data>
struct SolveReport {
  Data result;
  std::vector<double> energy_trace;     // J(x^(k)) per cycle
  std::vector<double> change_trace;     // cyclic l2 distance between x^(k-1) and x^(k)
  std::vector<double> deviation_trace;  // max_i d(x^(k)_i, f_i)
  int cycles_run = 0;
  std::string kernel;
};

using SignalReport = SolveReport<PhaseSignal>;
using ImageReport = SolveReport<PhaseImage>;

/// lambda_k = lambda0 / k for k >= 1.
inline double cycle_lambda(double lambda0, int k) noexcept { return lambda0 / k; }

/// Data term + weighted TV terms; sums run over valid index ranges only.
/// Throws std::invalid_argument on length mismatch.
double energy_1d(const PhaseSignal& x, const PhaseSignal& f, const Params1D& params);

/// Throws std::invalid_argument on dimension mismatch.
double energy_2d(const PhaseImage& x, const PhaseImage& f, const Params2D& params);

/// Requires N >= 2 when alpha > 0 and N >= 3 when beta > 0.
SignalReport cppa_denoise_1d(const PhaseSignal& f, const Params1D& params,
                             const SolveOptions& options = {});

/// Requires N >= 2 (alpha1, gamma), M >= 2 (alpha2, gamma), N >= 3 (beta1)
/// and M >= 3 (beta2) for every positive weight.
ImageReport cppa_denoise_2d(const PhaseImage& f, const Params2D& params,
                            const SolveOptions& options = {});

}  // namespace circtv
