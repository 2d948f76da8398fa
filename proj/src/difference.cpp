#include "circtv/difference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "circtv/angle.hpp"

namespace circtv {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

DifferenceWeight::DifferenceWeight(std::vector<double> entries, DifferenceOrder order)
    : entries_(std::move(entries)), order_(order) {
  if (entries_.size() < 2) {
    throw std::invalid_argument("DifferenceWeight: need at least two entries");
  }
  double sum = 0.0;
  bool nonzero = false;
  for (double v : entries_) {
    if (!std::isfinite(v)) throw std::invalid_argument("DifferenceWeight: non-finite entry");
    sum += v;
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw std::invalid_argument("DifferenceWeight: zero weight vector");
  if (std::abs(sum) > kSumTolerance) {
    throw std::invalid_argument("DifferenceWeight: entries must sum to zero, got " +
                                std::to_string(sum));
  }
}

DifferenceWeight::DifferenceWeight(std::initializer_list<double> entries)
    : DifferenceWeight(std::vector<double>(entries)) {}

DifferenceWeight DifferenceWeight::first_order() {
  return DifferenceWeight({-1.0, 1.0}, DifferenceOrder::first);
}

DifferenceWeight DifferenceWeight::second_order() {
  return DifferenceWeight({1.0, -2.0, 1.0}, DifferenceOrder::second);
}

DifferenceWeight DifferenceWeight::mixed_second_order() {
  return DifferenceWeight({-1.0, 1.0, 1.0, -1.0}, DifferenceOrder::mixed);
}

DifferenceWeight DifferenceWeight::binomial(int n) {
  if (n < 1 || n > 60) throw std::invalid_argument("DifferenceWeight::binomial: order out of range");
  // (-1)^(j+n-1) * C(n, j-1), j = 1..n+1
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  double c = 1.0;
  for (int k = 0; k <= n; ++k) {
    w[k] = ((n - k) % 2 == 0) ? c : -c;
    c = c * (n - k) / (k + 1);
  }
  DifferenceOrder order = DifferenceOrder::general;
  if (n == 1) order = DifferenceOrder::first;
  if (n == 2) order = DifferenceOrder::second;
  return DifferenceWeight(std::move(w), order);
}

double DifferenceWeight::squared_norm() const noexcept {
  return std::inner_product(entries_.begin(), entries_.end(), entries_.begin(), 0.0);
}

double DifferenceWeight::l1_norm() const noexcept {
  double s = 0.0;
  for (double v : entries_) s += std::abs(v);
  return s;
}

bool DifferenceWeight::is_named() const noexcept {
  switch (order_) {
    case DifferenceOrder::first:
      return *this == first_order();
    case DifferenceOrder::second:
      return *this == second_order();
    case DifferenceOrder::mixed:
      return *this == mixed_second_order();
    case DifferenceOrder::general:
      return false;
  }
  return false;
}

double delta(std::span<const double> x, const DifferenceWeight& w) {
  check_lengths(x.size(), w.size(), "delta");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * w[i];
  return s;
}

double abs_cyclic_diff_general(std::span<const double> x, const DifferenceWeight& w) {
  check_lengths(x.size(), w.size(), "abs_cyclic_diff_general");
  const std::size_t d = x.size();
  std::vector<double> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = wrap(x[i]);

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

  // <P^T x^k, w> = <x, w> + 2*pi * (sum of w over the k-1 smallest entries)
  const double base = delta(y, w);
  double lifted_weight = 0.0;
  double best = std::abs(base);
  for (std::size_t k = 1; k < d; ++k) {
    lifted_weight += w[order[k - 1]];
    best = std::min(best, std::abs(base + kTwoPi * lifted_weight));
  }
  return best;
}

double abs_cyclic_diff_closed(std::span<const double> x, const DifferenceWeight& w) {
  if (!w.is_named()) {
    throw std::invalid_argument("abs_cyclic_diff_closed: weight must be b1, b2 or b11");
  }
  check_lengths(x.size(), w.size(), "abs_cyclic_diff_closed");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += wrap(x[i]) * w[i];
  const double a = std::abs(s);
  if (a <= kPi) return a;
  if (a <= kTwoPi) return kTwoPi - a;
  if (a <= 3.0 * kPi) return a - kTwoPi;
  return 2.0 * kTwoPi - a;
}

}  // namespace circtv
