#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "circtv/angle.hpp"
#include "circtv/lifting.hpp"
#include "circtv/solver.hpp"
#include "oracles.hpp"

using circtv::kPi;
using circtv::Params2D;
using circtv::PhaseImage;

namespace {

// Smooth wrapped plane plus bounded jitter; neighbor jumps stay below pi/8.
PhaseImage smooth_image(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> slope(-0.2, 0.2);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::uniform_real_distribution<double> offset(-10.0, 10.0);
  const double a = slope(rng), b = slope(rng), c = offset(rng);
  std::vector<double> v(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) v[i * m + j] = c + a * i + b * j + jitter(rng);
  }
  return PhaseImage(n, m, v);
}

Params2D weights(double a, double b, double g, int p = 1) {
  Params2D q;
  q.alpha1 = q.alpha2 = a;
  q.beta1 = q.beta2 = b;
  q.gamma = g;
  q.p = p;
  return q;
}

}  // namespace

TEST_CASE("lifting a wrapped ramp recovers the ramp") {
  std::vector<double> v(50);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.3 * j;
  const auto x = PhaseImage(1, 50, v);
  const auto l = circtv::lift(x, 0.0);
  for (std::size_t j = 0; j < v.size(); ++j) CHECK(l.values(0, j) == doctest::Approx(0.3 * j));
  CHECK(l.base_offset == 0.0);

  const auto shifted = circtv::lift(x, 4.0 * kPi);
  CHECK(shifted.values(0, 49) == doctest::Approx(0.3 * 49 + 4.0 * kPi));
}

TEST_CASE("lift round trip and neighbor distances") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = smooth_image(rng, 13, 17);
    const double anchor = x(0, 0) + 2.0 * kPi * (trial % 5 - 2);
    const auto l = circtv::lift(x, anchor);
    CHECK(l.values(0, 0) == anchor);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        CHECK(oracle::dist_ref(l.values(i, j) - l.base_offset, x(i, j)) <= 1e-12);
        CHECK(oracle::dist_ref(l.values(i, j), x(i, j) + l.base_offset) <= 1e-12);
        if (j + 1 < x.cols()) {
          CHECK(std::abs(std::abs(l.values(i, j + 1) - l.values(i, j)) -
                         circtv::geodesic_distance(x(i, j), x(i, j + 1))) <= 1e-12);
        }
        if (i + 1 < x.rows()) {
          CHECK(std::abs(std::abs(l.values(i + 1, j) - l.values(i, j)) -
                         circtv::geodesic_distance(x(i, j), x(i + 1, j))) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("lift does not depend on the traversal order") {
  std::mt19937_64 rng(93);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = smooth_image(rng, 9, 21);
    const auto a = circtv::lift(x, 1.5);
    const auto b = circtv::lift_column_first(x, 1.5);
    for (std::size_t k = 0; k < a.values.values.size(); ++k) {
      CHECK(std::abs(a.values.values[k] - b.values.values[k]) <= 1e-9);
    }
  }
}

TEST_CASE("lift reports the offending pixel pair") {
  PhaseImage x(3, 3, 0.0);
  std::vector<double> v(9, 0.0);
  v[1 * 3 + 2] = 1.7;
  x = PhaseImage(3, 3, v);
  try {
    circtv::lift(x, 0.0);
    FAIL("expected PreconditionError");
  } catch (const circtv::PreconditionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(0, 2)") != std::string::npos);
    CHECK(msg.find("(1, 2)") != std::string::npos);
  }
  CHECK_THROWS_AS(circtv::lift(PhaseImage(), 0.0), std::invalid_argument);
}

TEST_CASE("cyclic energy equals the real energy of consistent lifts") {
  std::mt19937_64 rng(95);
  std::uniform_real_distribution<double> noise(-0.1, 0.1);
  for (int p : {1, 2}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = smooth_image(rng, 11, 12);
      std::vector<double> xv(f.pixels().begin(), f.pixels().end());
      for (double& v : xv) v += noise(rng);
      const PhaseImage x(11, 12, xv);
      const auto lf = circtv::lift(f, f(0, 0));
      const auto lx = circtv::lift(x, f(0, 0) + circtv::wrap(x(0, 0) - f(0, 0)));
      const auto q = weights(0.3, 0.2, 0.4, p);
      CHECK(circtv::energy_2d(x, f, q) ==
            doctest::Approx(circtv::real_energy_2d(lx.values, lf.values, q)).epsilon(1e-10));
    }
  }
}

TEST_CASE("neighbor statistics") {
  const PhaseImage x(2, 2, std::vector<double>{3.0, -3.0, 3.0, 2.5});
  CHECK(circtv::d_inf_neighbors(x) == doctest::Approx(2.0 * kPi - 5.5));
  const PhaseImage y(2, 2, std::vector<double>{3.0, 3.0, 3.0, 3.0});
  CHECK(circtv::d_inf_between(x, y) == doctest::Approx(0.5));
  CHECK_THROWS_AS(circtv::d_inf_between(x, PhaseImage(1, 4)), std::invalid_argument);
  const circtv::PhaseSignal s({0.0, 0.1, -0.2});
  CHECK(circtv::d_inf_neighbors(s) == doctest::Approx(0.3));
}

TEST_CASE("total variation budget of a constant is zero") {
  CHECK(circtv::total_variation_budget(PhaseImage(6, 6, 2.0)) == 0.0);
  std::vector<double> v(16);
  for (std::size_t i = 0; i < 16; ++i) v[i] = 0.1 * (i % 4);
  // horizontal ramp: 4 rows * 3 first differences of 0.1, nothing else
  CHECK(circtv::total_variation_budget(PhaseImage(4, 4, v)) == doctest::Approx(1.2));
}

TEST_CASE("convergence conditions with the default schedule") {
  const PhaseImage f(16, 16, 0.0);
  Params2D q = weights(1.0, 1.0, 1.0);
  const auto c = circtv::check_convergence_conditions(f, q, kPi, 4000, 0.1);
  CHECK(c.neighbor_condition());
  CHECK(c.budget_condition());
  CHECK(c.lambda_l2 * c.lambda_l2 == doctest::Approx(kPi * kPi * 1.6447).epsilon(1e-4));
  CHECK(c.lambda_inf == doctest::Approx(kPi));
  CHECK(c.c == 15);
  CHECK_FALSE(c.step_condition());
  CHECK_FALSE(c.all());
}

TEST_CASE("convergence conditions can hold for tiny steps") {
  std::vector<double> v(64);
  for (std::size_t i = 0; i < 64; ++i) v[i] = 0.001 * (i % 8);
  const PhaseImage f(8, 8, v);
  Params2D q = weights(1e-3, 1e-3, 1e-3);
  const auto c = circtv::check_convergence_conditions(f, q, 1e-4, 100, 0.05);
  CHECK(c.neighbor_condition());
  CHECK(c.budget_condition());
  CHECK(c.step_condition());
  CHECK(c.step_bound() < kPi / 16);
  CHECK(c.all());

  const circtv::PhaseSignal s({0.0, 0.05, 0.1, 0.15});
  circtv::Params1D p;
  p.alpha = 1e-3;
  const auto c1 = circtv::check_convergence_conditions(s, p, 1e-4, 100, 0.05);
  CHECK(c1.c == 6);
  CHECK(c1.all());
}

TEST_CASE("convergence conditions detect large jumps and budgets") {
  const PhaseImage f(2, 2, std::vector<double>{0.0, 0.5, 0.0, 0.5});
  const auto c = circtv::check_convergence_conditions(f, weights(1, 1, 1), 1e-4, 10, 0.1);
  CHECK_FALSE(c.neighbor_condition());
  CHECK_FALSE(c.budget_condition());
  CHECK_THROWS_AS(circtv::check_convergence_conditions(f, weights(1, 1, 1), 1e-4, 10, 0.0),
                  std::invalid_argument);
}
