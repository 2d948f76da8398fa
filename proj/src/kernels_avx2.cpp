// AVX2 variants of the block kernels. Every lane performs the same IEEE
// operation sequence as the scalar code in detail/block_ops.hpp, with blends
// in place of masked adds.
//
// Compiled with -mavx2. No inline functions from shared headers are used
// here; remainders go through the scalar kernel table.

#include <immintrin.h>

#include <cstdint>

#include "circtv/angle.hpp"
#include "circtv/kernels.hpp"

namespace circtv {

namespace {

constexpr std::size_t kLanes = 4;

struct Consts {
  __m256d two_pi = _mm256_set1_pd(kTwoPi);
  __m256d pi = _mm256_set1_pd(kPi);
  __m256d neg_pi = _mm256_set1_pd(-kPi);
  __m256d one = _mm256_set1_pd(1.0);
  __m256d two = _mm256_set1_pd(2.0);
  __m256d zero = _mm256_setzero_pd();
  __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
};

inline __m256d wrap4(__m256d x, const Consts& c) {
  const __m256d k =
      _mm256_round_pd(_mm256_div_pd(x, c.two_pi), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(k, c.two_pi));
  r = _mm256_blendv_pd(r, _mm256_add_pd(r, c.two_pi), _mm256_cmp_pd(r, c.neg_pi, _CMP_LT_OQ));
  r = _mm256_blendv_pd(r, _mm256_sub_pd(r, c.two_pi), _mm256_cmp_pd(r, c.pi, _CMP_GE_OQ));
  return r;
}

inline __m256d abs4(__m256d x, const Consts& c) { return _mm256_and_pd(x, c.abs_mask); }

inline __m256d sgn4(__m256d x, const Consts& c) {
  const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(x, c.zero, _CMP_GT_OQ), c.one);
  const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(x, c.zero, _CMP_LT_OQ), c.one);
  return _mm256_sub_pd(pos, neg);
}

// Mirrors detail::shrink_shift.
struct Shrink {
  int p;
  __m256d lambda;
  __m256d w_sq_norm;
  __m256d denom;  // 1 + lambda * |w|^2, p = 2 only

  Shrink(double lam, double nw2, int exponent)
      : p(exponent),
        lambda(_mm256_set1_pd(lam)),
        w_sq_norm(_mm256_set1_pd(nw2)),
        denom(_mm256_set1_pd(1.0 + lam * nw2)) {}

  __m256d operator()(__m256d wrapped_delta, const Consts& c) const {
    if (p == 1) {
      const __m256d m = _mm256_min_pd(_mm256_div_pd(abs4(wrapped_delta, c), w_sq_norm), lambda);
      return _mm256_mul_pd(sgn4(wrapped_delta, c), m);
    }
    return _mm256_div_pd(_mm256_mul_pd(lambda, wrapped_delta), denom);
  }
};

// Strided access to four consecutive blocks.
struct Lane {
  double* base;
  std::ptrdiff_t stride;
  __m256i index;

  Lane(double* b, std::ptrdiff_t s) : base(b), stride(s), index(_mm256_set_epi64x(3 * s, 2 * s, s, 0)) {}

  __m256d load(std::size_t k) const {
    double* p = base + static_cast<std::ptrdiff_t>(k) * stride;
    if (stride == 1) return _mm256_loadu_pd(p);
    return _mm256_i64gather_pd(p, index, 8);
  }

  void store(std::size_t k, __m256d v) const {
    double* p = base + static_cast<std::ptrdiff_t>(k) * stride;
    if (stride == 1) {
      _mm256_storeu_pd(p, v);
      return;
    }
    alignas(32) double tmp[kLanes];
    _mm256_store_pd(tmp, v);
    for (std::size_t l = 0; l < kLanes; ++l) p[static_cast<std::ptrdiff_t>(l) * stride] = tmp[l];
  }
};

void data_fidelity_avx2(double* x, const double* f, std::size_t n, double lambda) {
  const Consts c;
  const __m256d coef = _mm256_set1_pd(lambda / (1.0 + lambda));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d g = _mm256_loadu_pd(x + i);
    const __m256d fv = _mm256_loadu_pd(f + i);
    const __m256d diff = _mm256_sub_pd(g, fv);
    const __m256d far = _mm256_cmp_pd(abs4(diff, c), c.pi, _CMP_GT_OQ);
    const __m256d v = _mm256_blendv_pd(c.zero, sgn4(diff, c), far);
    const __m256d step = _mm256_add_pd(_mm256_sub_pd(fv, g), _mm256_mul_pd(c.two_pi, v));
    _mm256_storeu_pd(x + i, wrap4(_mm256_add_pd(g, _mm256_mul_pd(coef, step)), c));
  }
  scalar_kernels().data_fidelity(x + i, f + i, n - i, lambda);
}

void pair_avx2(double* a, double* b, std::size_t count, std::ptrdiff_t stride, double lambda,
               int p) {
  const Consts c;
  const Shrink shrink(lambda, 2.0, p);
  const Lane la(a, stride), lb(b, stride);
  std::size_t k = 0;
  for (; k + kLanes <= count; k += kLanes) {
    const __m256d va = la.load(k), vb = lb.load(k);
    const __m256d t = shrink(wrap4(_mm256_sub_pd(vb, va), c), c);
    la.store(k, wrap4(_mm256_add_pd(va, t), c));
    lb.store(k, wrap4(_mm256_sub_pd(vb, t), c));
  }
  const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(k) * stride;
  scalar_kernels().pair(a + o, b + o, count - k, stride, lambda, p);
}

void triple_avx2(double* a, double* b, double* cc, std::size_t count, std::ptrdiff_t stride,
                 double lambda, int p) {
  const Consts c;
  const Shrink shrink(lambda, 6.0, p);
  const Lane la(a, stride), lb(b, stride), lc(cc, stride);
  std::size_t k = 0;
  for (; k + kLanes <= count; k += kLanes) {
    const __m256d va = la.load(k), vb = lb.load(k), vc = lc.load(k);
    const __m256d d = _mm256_add_pd(_mm256_sub_pd(va, _mm256_mul_pd(c.two, vb)), vc);
    const __m256d t = shrink(wrap4(d, c), c);
    la.store(k, wrap4(_mm256_sub_pd(va, t), c));
    lb.store(k, wrap4(_mm256_add_pd(vb, _mm256_mul_pd(c.two, t)), c));
    lc.store(k, wrap4(_mm256_sub_pd(vc, t), c));
  }
  const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(k) * stride;
  scalar_kernels().triple(a + o, b + o, cc + o, count - k, stride, lambda, p);
}

void quad_avx2(double* a, double* b, double* cc, double* d, std::size_t count,
               std::ptrdiff_t stride, double lambda, int p) {
  const Consts c;
  const Shrink shrink(lambda, 4.0, p);
  const Lane la(a, stride), lb(b, stride), lc(cc, stride), ld(d, stride);
  std::size_t k = 0;
  for (; k + kLanes <= count; k += kLanes) {
    const __m256d va = la.load(k), vb = lb.load(k), vc = lc.load(k), vd = ld.load(k);
    const __m256d s = _mm256_add_pd(_mm256_sub_pd(vb, va), _mm256_sub_pd(vc, vd));
    const __m256d t = shrink(wrap4(s, c), c);
    la.store(k, wrap4(_mm256_add_pd(va, t), c));
    lb.store(k, wrap4(_mm256_sub_pd(vb, t), c));
    lc.store(k, wrap4(_mm256_sub_pd(vc, t), c));
    ld.store(k, wrap4(_mm256_add_pd(vd, t), c));
  }
  const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(k) * stride;
  scalar_kernels().quad(a + o, b + o, cc + o, d + o, count - k, stride, lambda, p);
}

void wrap_avx2(double* x, std::size_t n) {
  const Consts c;
  const __m256d limit = _mm256_set1_pd(kFastWrapLimit);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    // Fall back to the exact reduction when any lane is out of the fast range.
    if (_mm256_movemask_pd(_mm256_cmp_pd(abs4(v, c), limit, _CMP_GT_OQ)) != 0) {
      scalar_kernels().wrap_inplace(x + i, kLanes);
      continue;
    }
    _mm256_storeu_pd(x + i, wrap4(v, c));
  }
  scalar_kernels().wrap_inplace(x + i, n - i);
}

}  // namespace

namespace detail {

const BlockKernels& avx2_kernel_table() noexcept {
  static const BlockKernels table{"avx2",      data_fidelity_avx2, pair_avx2,
                                  triple_avx2, quad_avx2,          wrap_avx2};
  return table;
}

}  // namespace detail

}  // namespace circtv
