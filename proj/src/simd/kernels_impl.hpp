#pragma once

#include <cstddef>
#include <span>

#include "hzn/numkernel.hpp"

namespace hzn::simd::detail {

cplx weighted_sum_scalar(std::span<const double> w, std::span<const cplx> f);
cplx geometric_rational_sum_scalar(cplx v, cplx a, std::size_t count);

#if defined(HZN_HAVE_AVX2)
cplx weighted_sum_avx2(std::span<const double> w, std::span<const cplx> f);
cplx geometric_rational_sum_avx2(cplx v, cplx a, std::size_t count);
#endif

}  // namespace hzn::simd::detail
