#pragma once

// Containers for circle-valued signals and images. Every stored sample is a
// canonical representative in [-pi, pi); constructors wrap their input.

#include <cstddef>
#include <span>
#include <vector>

namespace circtv {

class PhaseSignal {
 public:
  PhaseSignal() = default;
  /// Wraps every sample. Throws std::invalid_argument on non-finite input.
  explicit PhaseSignal(std::vector<double> radians);

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  std::span<const double> samples() const noexcept { return samples_; }

  /// Raw access for kernels. Callers must keep entries canonical.
  std::span<double> mutable_samples() noexcept { return samples_; }

  friend bool operator==(const PhaseSignal&, const PhaseSignal&) = default;

 private:
  std::vector<double> samples_;
};

/// Row-major N x M grid of angles (N rows, M columns).
class PhaseImage {
 public:
  PhaseImage() = default;
  PhaseImage(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Wraps every pixel. Throws std::invalid_argument if the size does not
  /// match or a value is non-finite.
  PhaseImage(std::size_t rows, std::size_t cols, std::vector<double> radians);

  static PhaseImage from_signal(const PhaseSignal& s);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double operator()(std::size_t i, std::size_t j) const { return pixels_[i * cols_ + j]; }
  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(pixels_).subspan(i * cols_, cols_);
  }

  /// Raw access for kernels. Callers must keep entries canonical.
  std::span<double> mutable_pixels() noexcept { return pixels_; }

  /// Flattened copy as a signal (row-major order).
  PhaseSignal to_signal() const;

  friend bool operator==(const PhaseImage&, const PhaseImage&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> pixels_;
};

/// Unconstrained real-valued row-major grid (unwrapped surfaces, lifts).
struct RealGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

/// Entrywise wrap of a real grid.
PhaseImage wrap_grid(const RealGrid& g);

}  // namespace circtv
