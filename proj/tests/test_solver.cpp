#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "circtv/angle.hpp"
#include "circtv/difference.hpp"
#include "circtv/prox.hpp"
#include "circtv/solver.hpp"
#include "circtv/splitting.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using circtv::kPi;
using circtv::Params1D;
using circtv::Params2D;
using circtv::PhaseImage;
using circtv::PhaseSignal;

namespace {

Params2D all_weights(double a1, double a2, double b1, double b2, double g, int p = 1) {
  Params2D q;
  q.alpha1 = a1;
  q.alpha2 = a2;
  q.beta1 = b1;
  q.beta2 = b2;
  q.gamma = g;
  q.p = p;
  return q;
}

PhaseImage random_image(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  return PhaseImage(n, m, testutil::uniform_angles(rng, n * m));
}

// Reference energy written directly from the definition with the oracle's
// cyclic difference.
double reference_energy_2d(const PhaseImage& x, const PhaseImage& f, const Params2D& q) {
  const std::vector<double> b1{-1, 1}, b2{1, -2, 1}, b11{-1, 1, 1, -1};
  auto pen = [&](double t) { return q.p == 1 ? t : 0.5 * t * t; };
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = oracle::dist_ref(x.pixels()[i], f.pixels()[i]);
    e += 0.5 * d * d;
  }
  const std::size_t n = x.rows(), m = x.cols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i + 1 < n) {
        const std::vector<double> v{x(i, j), x(i + 1, j)};
        e += q.alpha1 * pen(oracle::cyclic_diff_definition(v, b1));
      }
      if (j + 1 < m) {
        const std::vector<double> v{x(i, j), x(i, j + 1)};
        e += q.alpha2 * pen(oracle::cyclic_diff_definition(v, b1));
      }
      if (i + 2 < n) {
        const std::vector<double> v{x(i, j), x(i + 1, j), x(i + 2, j)};
        e += q.beta1 * pen(oracle::cyclic_diff_definition(v, b2));
      }
      if (j + 2 < m) {
        const std::vector<double> v{x(i, j), x(i, j + 1), x(i, j + 2)};
        e += q.beta2 * pen(oracle::cyclic_diff_definition(v, b2));
      }
      if (i + 1 < n && j + 1 < m) {
        const std::vector<double> v{x(i, j), x(i + 1, j), x(i, j + 1), x(i + 1, j + 1)};
        e += q.gamma * pen(oracle::cyclic_diff_definition(v, b11));
      }
    }
  }
  return e;
}

}  // namespace

TEST_CASE("energy examples") {
  const PhaseSignal c(std::vector<double>(10, 1.2));
  Params1D p;
  p.alpha = 0.7;
  p.beta = 0.3;
  CHECK(circtv::energy_1d(c, c, p) == 0.0);

  const PhaseSignal prog({0.0, kPi / 2, kPi});
  Params1D q;
  q.beta = 1.0;
  CHECK(circtv::energy_1d(prog, prog, q) <= 1e-12);

  std::mt19937_64 rng(71);
  const PhaseSignal f(testutil::uniform_angles(rng, 40));
  const PhaseSignal g(testutil::uniform_angles(rng, 40));
  Params1D a;
  a.alpha = 0.6;
  Params1D b;
  b.beta = 0.4;
  Params1D ab;
  ab.alpha = 0.6;
  ab.beta = 0.4;
  const double data = circtv::energy_1d(g, f, ab) - circtv::energy_1d(g, g, ab);
  CHECK(circtv::energy_1d(f, f, ab) ==
        doctest::Approx(circtv::energy_1d(f, f, a) + circtv::energy_1d(f, f, b)));
  CHECK(data >= 0.0);

  const PhaseImage ci(5, 7, -0.4);
  CHECK(circtv::energy_2d(ci, ci, all_weights(1, 1, 1, 1, 1)) == 0.0);
}

TEST_CASE("energy of a single row reduces to the 1D energy") {
  std::mt19937_64 rng(73);
  const PhaseSignal x(testutil::uniform_angles(rng, 30));
  const PhaseSignal f(testutil::uniform_angles(rng, 30));
  Params1D p1;
  p1.alpha = 0.8;
  p1.beta = 0.35;
  const auto p2 = all_weights(5.0, 0.8, 7.0, 0.35, 3.0);
  CHECK(circtv::energy_2d(PhaseImage::from_signal(x), PhaseImage::from_signal(f), p2) ==
        doctest::Approx(circtv::energy_1d(x, f, p1)).epsilon(1e-13));
}

TEST_CASE("mixed term vanishes on separable linear data") {
  PhaseImage x(9, 11);
  std::vector<double> v(99);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 11; ++j) v[i * 11 + j] = 0.9 * j - 0.4 * i;
  x = PhaseImage(9, 11, v);
  CHECK(circtv::energy_2d(x, x, all_weights(0, 0, 0, 0, 1.0)) <= 1e-12);
}

TEST_CASE("energy agrees with the definition-based reference") {
  std::mt19937_64 rng(75);
  for (int p : {1, 2}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_image(rng, 6, 5);
      const auto f = random_image(rng, 6, 5);
      const auto q = all_weights(0.3, 0.2, 0.5, 0.1, 0.7, p);
      CHECK(circtv::energy_2d(x, f, q) ==
            doctest::Approx(reference_energy_2d(x, f, q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy rejects mismatched shapes") {
  Params1D p;
  p.alpha = 1.0;
  CHECK_THROWS_AS(circtv::energy_1d(PhaseSignal({1, 2}), PhaseSignal({1, 2, 3}), p),
                  std::invalid_argument);
  CHECK_THROWS_AS(circtv::energy_2d(PhaseImage(2, 3), PhaseImage(3, 2), all_weights(1, 0, 0, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("split summands add up to the energy") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(1, 17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(len(rng));
    const PhaseSignal x(testutil::uniform_angles(rng, n));
    const PhaseSignal f(testutil::uniform_angles(rng, n));
    Params1D p;
    p.alpha = 0.4;
    p.beta = 0.9;
    p.p = 1 + trial % 2;
    double sum = 0.0;
    for (int l = 1; l <= circtv::kCycleLength1D; ++l) {
      sum += circtv::split_term_1d(l, x.samples(), f.samples(), p);
    }
    CHECK(std::abs(sum - circtv::energy_1d(x, f, p)) <= 1e-10);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(len(rng));
    const std::size_t m = static_cast<std::size_t>(len(rng));
    const auto x = random_image(rng, n, m);
    const auto f = random_image(rng, n, m);
    const auto q = all_weights(0.3, 0.2, 0.5, 0.1, 0.7, 1 + trial % 2);
    double sum = 0.0;
    for (int l = 1; l <= circtv::kCycleLength2D; ++l) sum += circtv::split_term_2d(l, x, f, q);
    CHECK(std::abs(sum - circtv::energy_2d(x, f, q)) <= 1e-10);
  }
}

TEST_CASE("blocks of a summand are disjoint") {
  for (std::size_t n : {1u, 2u, 5u, 8u, 13u}) {
    for (std::size_t m : {1u, 3u, 4u, 9u}) {
      for (int l = 2; l <= circtv::kCycleLength2D; ++l) {
        std::vector<int> hits(n * m, 0);
        for (const auto& b : circtv::substep_blocks_2d(l, n, m)) {
          for (int k = 0; k < b.size; ++k) ++hits[b.index[k]];
        }
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; }));
      }
    }
    for (int l = 2; l <= circtv::kCycleLength1D; ++l) {
      std::vector<int> hits(n, 0);
      for (const auto& b : circtv::substep_blocks_1d(l, n)) {
        for (int k = 0; k < b.size; ++k) ++hits[b.index[k]];
      }
      CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; }));
    }
  }
}

TEST_CASE("substep equals blockwise prox applied in any order") {
  std::mt19937_64 rng(79);
  const auto& kernels = circtv::select_kernels();
  for (int p : {1, 2}) {
    const auto q = all_weights(0.3, 0.6, 0.2, 0.8, 0.5, p);
    for (int l = 2; l <= circtv::kCycleLength2D; ++l) {
      const std::size_t n = 11, m = 14;
      const auto f = random_image(rng, n, m);
      auto x = random_image(rng, n, m);
      auto via_kernel = x;
      circtv::prox_substep_2d(l, via_kernel.mutable_pixels(), f.pixels(), n, m, 0.9, q, kernels);

      auto blocks = circtv::substep_blocks_2d(l, n, m);
      std::shuffle(blocks.begin(), blocks.end(), rng);
      std::vector<double> ref(x.pixels().begin(), x.pixels().end());
      const double lam = 0.9 * circtv::substep_weight_2d(l, q);
      for (const auto& b : blocks) {
        const auto w = b.size == 2   ? circtv::DifferenceWeight::first_order()
                       : b.size == 3 ? circtv::DifferenceWeight::second_order()
                                     : circtv::DifferenceWeight::mixed_second_order();
        std::vector<double> local;
        for (int k = 0; k < b.size; ++k) local.push_back(ref[b.index[k]]);
        const auto r = circtv::prox_cyclic_diff(local, w, {lam, p});
        for (int k = 0; k < b.size; ++k) ref[b.index[k]] = r.primary_minimizer[k];
      }
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(ref[i] == via_kernel.pixels()[i]);
    }
  }
}

TEST_CASE("1D substeps equal blockwise prox") {
  std::mt19937_64 rng(81);
  const auto& kernels = circtv::select_kernels();
  Params1D p;
  p.alpha = 0.5;
  p.beta = 0.7;
  for (std::size_t n : {2u, 3u, 7u, 16u, 31u}) {
    for (int l = 2; l <= circtv::kCycleLength1D; ++l) {
      const auto f = testutil::uniform_angles(rng, n);
      auto x = testutil::uniform_angles(rng, n);
      auto ref = x;
      circtv::prox_substep_1d(l, x, f, 1.1, p, kernels);
      const double lam = 1.1 * circtv::substep_weight_1d(l, p);
      for (const auto& b : circtv::substep_blocks_1d(l, n)) {
        const auto w = b.size == 2 ? circtv::DifferenceWeight::first_order()
                                   : circtv::DifferenceWeight::second_order();
        std::vector<double> local;
        for (int k = 0; k < b.size; ++k) local.push_back(ref[b.index[k]]);
        const auto r = circtv::prox_cyclic_diff(local, w, {lam, 1});
        for (int k = 0; k < b.size; ++k) ref[b.index[k]] = r.primary_minimizer[k];
      }
      for (std::size_t i = 0; i < n; ++i) CHECK(ref[i] == x[i]);
    }
  }
}

TEST_CASE("constant data is a fixed point") {
  const PhaseSignal f(std::vector<double>(25, -2.2));
  Params1D p;
  p.alpha = 1.0;
  p.beta = 2.0;
  p.max_cycles = 1;
  CHECK(circtv::cppa_denoise_1d(f, p).result == f);
  p.max_cycles = 50;
  CHECK(circtv::cppa_denoise_1d(f, p).result == f);

  const PhaseImage g(8, 9, -kPi);
  auto q = all_weights(1, 1, 1, 1, 1);
  q.max_cycles = 3;
  CHECK(circtv::cppa_denoise_2d(g, q).result == g);
}

TEST_CASE("reports have one entry per cycle") {
  std::mt19937_64 rng(83);
  const PhaseSignal f(testutil::uniform_angles(rng, 20));
  Params1D p;
  p.alpha = 0.3;
  p.max_cycles = 37;
  const auto r = circtv::cppa_denoise_1d(f, p);
  CHECK(r.cycles_run == 37);
  CHECK(r.energy_trace.size() == 37);
  CHECK(r.change_trace.size() == 37);
  CHECK(r.deviation_trace.size() == 37);

  circtv::SolveOptions o;
  o.record_energy = false;
  o.early_stop_change = 1e-3;
  p.max_cycles = 100000;
  const auto s = circtv::cppa_denoise_1d(f, p, o);
  CHECK(s.energy_trace.empty());
  CHECK(s.cycles_run < 100000);
  CHECK(s.change_trace.back() < 1e-3);
}

TEST_CASE("observer sees every substep") {
  const PhaseImage f(4, 4, 0.1);
  auto q = all_weights(0.1, 0.1, 0.1, 0.1, 0.1);
  q.max_cycles = 3;
  circtv::SolveOptions o;
  int calls = 0;
  int last_l = 0;
  o.on_substep = [&](int k, int l, std::span<const double> x) {
    ++calls;
    last_l = l;
    CHECK(k >= 1);
    CHECK(x.size() == 16);
  };
  circtv::cppa_denoise_2d(f, q, o);
  CHECK(calls == 3 * circtv::kCycleLength2D);
  CHECK(last_l == circtv::kCycleLength2D);
}

TEST_CASE("scalar and avx2 solves agree bitwise") {
  std::mt19937_64 rng(85);
  const auto f = random_image(rng, 23, 19);
  auto q = all_weights(0.25, 0.125, 0.125, 0.125, 0.1);
  q.max_cycles = 40;
  circtv::SolveOptions s, v;
  s.isa = circtv::KernelIsa::scalar;
  v.isa = circtv::KernelIsa::avx2;
  const auto a = circtv::cppa_denoise_2d(f, q, s);
  const auto b = circtv::cppa_denoise_2d(f, q, v);
  CHECK(a.result == b.result);
  CHECK(a.energy_trace == b.energy_trace);
}

TEST_CASE("energy decreases on a small instance") {
  std::mt19937_64 rng(87);
  const PhaseSignal clean = [] {
    std::vector<double> v(60);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.05 * static_cast<double>(i);
    return PhaseSignal(v);
  }();
  std::vector<double> noisy(clean.samples().begin(), clean.samples().end());
  std::normal_distribution<double> n(0.0, 0.05);
  for (double& v : noisy) v += n(rng);
  const PhaseSignal f(noisy);
  Params1D p;
  p.alpha = 0.1;
  p.beta = 0.2;
  p.lambda0 = 0.5;
  p.max_cycles = 2000;
  const auto r = circtv::cppa_denoise_1d(f, p);
  CHECK(r.energy_trace.back() <= circtv::energy_1d(f, f, p));
  CHECK(r.change_trace.back() < 1e-4);
}

TEST_CASE("parameter validation") {
  const PhaseSignal f({0.0, 0.1, 0.2});
  Params1D p;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(f, p), std::invalid_argument);
  p.alpha = -1.0;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(f, p), std::invalid_argument);
  p.alpha = 1.0;
  p.lambda0 = 0.0;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(f, p), std::invalid_argument);
  p.lambda0 = 1.0;
  p.max_cycles = 0;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(f, p), std::invalid_argument);
  p.max_cycles = 1;
  p.p = 3;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(f, p), std::invalid_argument);

  Params1D b;
  b.beta = 1.0;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(PhaseSignal({0.0, 1.0}), b), std::invalid_argument);
  Params1D a;
  a.alpha = 1.0;
  CHECK_THROWS_AS(circtv::cppa_denoise_1d(PhaseSignal({0.0}), a), std::invalid_argument);
  CHECK_NOTHROW(circtv::cppa_denoise_1d(PhaseSignal({0.0, 1.0}), a));

  CHECK_THROWS_AS(circtv::cppa_denoise_2d(PhaseImage(2, 5), all_weights(0, 0, 1, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(circtv::cppa_denoise_2d(PhaseImage(5, 1), all_weights(0, 0, 0, 0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(circtv::cppa_denoise_2d(PhaseImage(3, 3), all_weights(0, 0, 0, 0, 0)),
                  std::invalid_argument);
  CHECK_NOTHROW(circtv::cppa_denoise_2d(PhaseImage(1, 5), all_weights(0, 1, 0, 1, 0)));
}

TEST_CASE("step schedule") {
  CHECK(circtv::cycle_lambda(kPi, 1) == kPi);
  CHECK(circtv::cycle_lambda(kPi, 4) == kPi / 4);
  double s1 = 0.0, s2 = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    const double l = circtv::cycle_lambda(1.0, k);
    s1 += l;
    s2 += l * l;
  }
  CHECK(s1 > 12.0);
  CHECK(s2 < kPi * kPi / 6);
}
