#include "circtv/angle.hpp"

#include <stdexcept>
#include <string>

namespace circtv {

double wrap(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("wrap: non-finite angle " + std::to_string(x));
  }
  return wrap_unchecked(x);
}

}  // namespace circtv
