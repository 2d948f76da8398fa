#include "circtv/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circtv/angle.hpp"

namespace circtv {

namespace {

void check_lift_precondition(const PhaseImage& x) {
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  auto fail = [](std::size_t i, std::size_t j, std::size_t k, std::size_t l, double d) {
    std::ostringstream os;
    os << "lift: neighbor distance " << d << " >= pi/2 between pixels (" << i << ", " << j
       << ") and (" << k << ", " << l << ")";
    throw PreconditionError(os.str());
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j + 1 < m) {
        const double d = geodesic_distance(x(i, j), x(i, j + 1));
        if (d >= kPi / 2) fail(i, j, i, j + 1, d);
      }
      if (i + 1 < n) {
        const double d = geodesic_distance(x(i, j), x(i + 1, j));
        if (d >= kPi / 2) fail(i, j, i + 1, j, d);
      }
    }
  }
}

LiftedImage make_lift(const PhaseImage& x, double anchor) {
  if (x.empty()) throw std::invalid_argument("lift: empty image");
  check_lift_precondition(x);
  LiftedImage out;
  out.values = RealGrid{x.rows(), x.cols(), std::vector<double>(x.size(), 0.0)};
  out.anchor = anchor;
  out.base_offset = anchor - x(0, 0);
  out.values(0, 0) = anchor;
  return out;
}

// value at q given the lifted neighbor p
double step(const PhaseImage& x, const RealGrid& v, std::size_t pi, std::size_t pj,
            std::size_t qi, std::size_t qj) {
  return v(pi, pj) + wrap_unchecked(x(qi, qj) - x(pi, pj));
}

}  // namespace

double d_inf_neighbors(const PhaseImage& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (j + 1 < x.cols()) m = std::max(m, geodesic_distance(x(i, j), x(i, j + 1)));
      if (i + 1 < x.rows()) m = std::max(m, geodesic_distance(x(i, j), x(i + 1, j)));
    }
  }
  return m;
}

double d_inf_neighbors(const PhaseSignal& x) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) m = std::max(m, geodesic_distance(x[i], x[i + 1]));
  return m;
}

double d_inf_between(const PhaseImage& x, const PhaseImage& f) {
  if (x.rows() != f.rows() || x.cols() != f.cols()) {
    throw std::invalid_argument("d_inf_between: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m = std::max(m, geodesic_distance(x.pixels()[i], f.pixels()[i]));
  }
  return m;
}

double d_inf_between(const PhaseSignal& x, const PhaseSignal& f) {
  if (x.size() != f.size()) throw std::invalid_argument("d_inf_between: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, geodesic_distance(x[i], f[i]));
  return m;
}

LiftedImage lift(const PhaseImage& x, double anchor) {
  LiftedImage out = make_lift(x, anchor);
  RealGrid& v = out.values;
  for (std::size_t j = 1; j < x.cols(); ++j) v(0, j) = step(x, v, 0, j - 1, 0, j);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 1; i < x.rows(); ++i) v(i, j) = step(x, v, i - 1, j, i, j);
  }
  return out;
}

LiftedImage lift_column_first(const PhaseImage& x, double anchor) {
  LiftedImage out = make_lift(x, anchor);
  RealGrid& v = out.values;
  for (std::size_t i = 1; i < x.rows(); ++i) v(i, 0) = step(x, v, i - 1, 0, i, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 1; j < x.cols(); ++j) v(i, j) = step(x, v, i, j - 1, i, j);
  }
  return out;
}

double real_energy_2d(const RealGrid& x, const RealGrid& f, const Params2D& params) {
  if (x.rows != f.rows || x.cols != f.cols || x.values.size() != f.values.size()) {
    throw std::invalid_argument("real_energy_2d: dimension mismatch");
  }
  auto pen = [p = params.p](double d) { return p == 1 ? std::abs(d) : 0.5 * d * d; };
  const std::size_t n = x.rows;
  const std::size_t m = x.cols;
  double data = 0.0, a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = x(i, j);
      const double r = c - f(i, j);
      data += r * r;
      if (i + 1 < n) a1 += pen(x(i + 1, j) - c);
      if (j + 1 < m) a2 += pen(x(i, j + 1) - c);
      if (i + 2 < n) b1 += pen((c - 2.0 * x(i + 1, j)) + x(i + 2, j));
      if (j + 2 < m) b2 += pen((c - 2.0 * x(i, j + 1)) + x(i, j + 2));
      if (i + 1 < n && j + 1 < m) g += pen((x(i + 1, j) - c) + (x(i, j + 1) - x(i + 1, j + 1)));
    }
  }
  return 0.5 * data + params.alpha1 * a1 + params.alpha2 * a2 + params.beta1 * b1 +
         params.beta2 * b2 + params.gamma * g;
}

double total_variation_budget(const PhaseImage& x) {
  Params2D unit;
  unit.alpha1 = unit.alpha2 = unit.beta1 = unit.beta2 = unit.gamma = 1.0;
  unit.p = 1;
  return energy_2d(x, x, unit);
}

bool ConvergenceCheck::neighbor_condition() const { return d_inf_f < kPi / 8; }

bool ConvergenceCheck::budget_condition() const {
  return tv_budget <= epsilon * epsilon / max_weight;
}

double ConvergenceCheck::step_bound() const {
  const double cc = static_cast<double>(c);
  return std::sqrt(epsilon * epsilon + 2.0 * lambda_l2 * lambda_l2 * L * L * cc * (cc + 1.0)) +
         2.0 * lambda_inf * cc * L;
}

bool ConvergenceCheck::step_condition() const { return step_bound() < kPi / 16; }

namespace {

ConvergenceCheck fill_check(const PhaseImage& f, double max_weight, double lambda0,
                            int max_cycles, double epsilon, int c) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
  ConvergenceCheck out;
  out.d_inf_f = d_inf_neighbors(f);
  out.tv_budget = total_variation_budget(f);
  out.max_weight = max_weight;
  out.epsilon = epsilon;
  double sq = 0.0;
  for (int k = 1; k <= max_cycles; ++k) {
    const double l = cycle_lambda(lambda0, k);
    sq += l * l;
  }
  out.lambda_l2 = std::sqrt(sq);
  out.lambda_inf = cycle_lambda(lambda0, 1);
  out.c = c;
  return out;
}

}  // namespace

ConvergenceCheck check_convergence_conditions(const PhaseImage& f, const Params2D& params,
                                              double lambda0, int max_cycles, double epsilon) {
  return fill_check(f, params.max_weight(), lambda0, max_cycles, epsilon, 15);
}

ConvergenceCheck check_convergence_conditions(const PhaseSignal& f, const Params1D& params,
                                              double lambda0, int max_cycles, double epsilon) {
  return fill_check(PhaseImage::from_signal(f), std::max(params.alpha, params.beta), lambda0,
                    max_cycles, epsilon, 6);
}

}  // namespace circtv
