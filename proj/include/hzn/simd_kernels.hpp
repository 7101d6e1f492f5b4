#pragma once

// Hot inner loops with a portable scalar reference and an AVX2+FMA variant.
// The variant is chosen once at first use from the running CPU; setting
// HZN_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

#include "hzn/numkernel.hpp"

namespace hzn::simd {

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  // sum_k w[k] * f[k]
  cplx (*weighted_sum)(std::span<const double> w, std::span<const cplx> f);
  // sum_{k=0}^{count-1} v^k / (a + k); caller keeps a + k away from zero.
  cplx (*geometric_rational_sum)(cplx v, cplx a, std::size_t count);
};

const KernelTable& scalar_kernels();

// Null when the build has no AVX2 translation unit or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// Table selected for this process.
const KernelTable& kernels();

std::string_view backend_name(Backend b);

inline cplx weighted_sum(std::span<const double> w, std::span<const cplx> f) {
  return kernels().weighted_sum(w, f);
}

inline cplx geometric_rational_sum(cplx v, cplx a, std::size_t count) {
  return kernels().geometric_rational_sum(v, a, count);
}

}  // namespace hzn::simd
