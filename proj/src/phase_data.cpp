#include "circtv/phase_data.hpp"

#include <stdexcept>

#include "circtv/angle.hpp"

namespace circtv {

PhaseSignal::PhaseSignal(std::vector<double> radians) : samples_(std::move(radians)) {
  for (double& v : samples_) v = wrap(v);
}

PhaseImage::PhaseImage(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), pixels_(rows * cols, wrap(fill)) {}

PhaseImage::PhaseImage(std::size_t rows, std::size_t cols, std::vector<double> radians)
    : rows_(rows), cols_(cols), pixels_(std::move(radians)) {
  if (pixels_.size() != rows * cols) {
    throw std::invalid_argument("PhaseImage: expected " + std::to_string(rows * cols) +
                                " values, got " + std::to_string(pixels_.size()));
  }
  for (double& v : pixels_) v = wrap(v);
}

PhaseImage PhaseImage::from_signal(const PhaseSignal& s) {
  return PhaseImage(1, s.size(), std::vector<double>(s.samples().begin(), s.samples().end()));
}

PhaseSignal PhaseImage::to_signal() const { return PhaseSignal(pixels_); }

PhaseImage wrap_grid(const RealGrid& g) { return PhaseImage(g.rows, g.cols, g.values); }

}  // namespace circtv
