#include <cstdlib>
#include <string_view>

#include "circtv/kernels.hpp"

namespace circtv {

#if defined(CIRCTV_WITH_AVX2)
namespace detail {
const BlockKernels& avx2_kernel_table() noexcept;
}
#endif

bool cpu_supports_avx2() noexcept {
#if defined(CIRCTV_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const BlockKernels* avx2_kernels() noexcept {
#if defined(CIRCTV_WITH_AVX2)
  if (cpu_supports_avx2()) return &detail::avx2_kernel_table();
#endif
  return nullptr;
}

const BlockKernels& select_kernels(KernelIsa preference) noexcept {
  if (preference == KernelIsa::automatic) {
    const char* env = std::getenv("CIRCTV_ISA");
    if (env != nullptr && std::string_view(env) == "scalar") preference = KernelIsa::scalar;
  }
  if (preference != KernelIsa::scalar) {
    if (const BlockKernels* k = avx2_kernels()) return *k;
  }
  return scalar_kernels();
}

}  // namespace circtv
