#include <cstdlib>
#include <string_view>

#include "hzn/simd_kernels.hpp"
#include "kernels_impl.hpp"

namespace hzn::simd {

namespace {

bool cpu_has_avx2() {
#if defined(HZN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  if (const char* env = std::getenv("HZN_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::scalar, &detail::weighted_sum_scalar,
                                 &detail::geometric_rational_sum_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(HZN_HAVE_AVX2)
  static const KernelTable table{Backend::avx2, &detail::weighted_sum_avx2,
                                 &detail::geometric_rational_sum_avx2};
  static const bool usable = cpu_has_avx2();
  return usable ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() {
  static const KernelTable& active = select();
  return active;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace hzn::simd
