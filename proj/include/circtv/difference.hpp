#pragma once

// Finite differences of real vectors and absolute cyclic differences of
// circle-valued vectors.

#include <initializer_list>
#include <span>
#include <vector>

namespace circtv {

enum class DifferenceOrder { first, second, mixed, general };

/// Weight vector of a finite difference. Components sum to zero and at least
/// one is nonzero.
class DifferenceWeight {
 public:
  /// Validates length >= 2, |sum| <= 1e-12 and w != 0. Throws
  /// std::invalid_argument otherwise.
  DifferenceWeight(std::vector<double> entries,
                   DifferenceOrder order = DifferenceOrder::general);
  DifferenceWeight(std::initializer_list<double> entries);

  /// b1 = (-1, 1)
  static DifferenceWeight first_order();
  /// b2 = (1, -2, 1)
  static DifferenceWeight second_order();
  /// b11 = (-1, 1, 1, -1)
  static DifferenceWeight mixed_second_order();
  /// Forward difference of order n: alternating binomial coefficients,
  /// length n + 1.
  static DifferenceWeight binomial(int n);

  std::span<const double> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  DifferenceOrder order() const noexcept { return order_; }

  double squared_norm() const noexcept;
  double l1_norm() const noexcept;

  /// True for b1, b2 and b11, the weights with a closed-form proximal map.
  bool is_named() const noexcept;

  friend bool operator==(const DifferenceWeight&, const DifferenceWeight&) = default;

 private:
  std::vector<double> entries_;
  DifferenceOrder order_;
};

/// Inner product <x, w>. Throws std::invalid_argument on length mismatch.
double delta(std::span<const double> x, const DifferenceWeight& w);

/// Absolute cyclic difference by enumerating the d sorted-and-shifted
/// candidates: sort x ascending (stable), then lift the k smallest entries by
/// 2*pi for k = 0..d-1 and take the smallest |<., w>|. Valid for any weight.
double abs_cyclic_diff_general(std::span<const double> x, const DifferenceWeight& w);

/// |wrap(<x, w>)| evaluated piecewise on |<x, w>| in [0, 4*pi). Exact for b1,
/// b2 and b11 only; throws std::invalid_argument for any other weight.
double abs_cyclic_diff_closed(std::span<const double> x, const DifferenceWeight& w);

}  // namespace circtv
