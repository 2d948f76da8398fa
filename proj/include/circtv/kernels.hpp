#pragma once

// Data-parallel block kernels used by the solver's inner loops.
//
// Each kernel updates `count` independent blocks. Block k consists of the
// entries base[k * stride] of every component pointer, so the same kernel
// serves horizontal blocks (stride 2 or 3 inside a row) and vertical blocks
// (stride 1 across consecutive rows). Component pointers of one call never
// alias a location of another block.
//
// A scalar reference implementation is always available. An AVX2 variant is
// compiled when the toolchain supports it and selected at runtime when the CPU
// does; both produce bit-identical results.

#include <cstddef>
#include <string_view>

namespace circtv {

struct BlockKernels {
  std::string_view name;

  /// x[i] <- prox of lambda * 1/2 d(f[i], .)^2 at x[i], i < n (contiguous).
  void (*data_fidelity)(double* x, const double* f, std::size_t n, double lambda);

  /// First-order blocks (a, b), weight b1.
  void (*pair)(double* a, double* b, std::size_t count, std::ptrdiff_t stride, double lambda,
               int p);

  /// Second-order blocks (a, b, c), weight b2.
  void (*triple)(double* a, double* b, double* c, std::size_t count, std::ptrdiff_t stride,
                 double lambda, int p);

  /// Mixed blocks (a, b, c, d), weight b11 = (-1, 1, 1, -1).
  void (*quad)(double* a, double* b, double* c, double* d, std::size_t count,
               std::ptrdiff_t stride, double lambda, int p);

  /// In-place canonical wrap of n contiguous finite values.
  void (*wrap_inplace)(double* x, std::size_t n);
};

enum class KernelIsa { automatic, scalar, avx2 };

const BlockKernels& scalar_kernels() noexcept;

/// The AVX2 table, or nullptr when it was not compiled in or the CPU lacks
/// AVX2.
const BlockKernels* avx2_kernels() noexcept;

bool cpu_supports_avx2() noexcept;

/// Resolves a preference to a kernel table. `automatic` picks the widest
/// available variant unless the environment variable CIRCTV_ISA is set to
/// "scalar". Requesting avx2 on a machine without it falls back to scalar.
const BlockKernels& select_kernels(KernelIsa preference = KernelIsa::automatic) noexcept;

}  // namespace circtv
