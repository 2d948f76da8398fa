#include "circtv/detail/block_ops.hpp"
#include "circtv/kernels.hpp"

namespace circtv {

namespace {

void data_fidelity_scalar(double* x, const double* f, std::size_t n, double lambda) {
  for (std::size_t i = 0; i < n; ++i) x[i] = detail::prox_data_point(x[i], f[i], lambda);
}

void pair_scalar(double* a, double* b, std::size_t count, std::ptrdiff_t stride, double lambda,
                 int p) {
  for (std::size_t k = 0; k < count; ++k) {
    const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(k) * stride;
    detail::prox_pair(a[o], b[o], lambda, p);
  }
}

void triple_scalar(double* a, double* b, double* c, std::size_t count, std::ptrdiff_t stride,
                   double lambda, int p) {
  for (std::size_t k = 0; k < count; ++k) {
    const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(k) * stride;
    detail::prox_triple(a[o], b[o], c[o], lambda, p);
  }
}

void quad_scalar(double* a, double* b, double* c, double* d, std::size_t count,
                 std::ptrdiff_t stride, double lambda, int p) {
  for (std::size_t k = 0; k < count; ++k) {
    const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(k) * stride;
    detail::prox_quad(a[o], b[o], c[o], d[o], lambda, p);
  }
}

void wrap_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = wrap_unchecked(x[i]);
}

}  // namespace

const BlockKernels& scalar_kernels() noexcept {
  static const BlockKernels table{"scalar",    data_fidelity_scalar, pair_scalar,
                                  triple_scalar, quad_scalar,        wrap_scalar};
  return table;
}

}  // namespace circtv
