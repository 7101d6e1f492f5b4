#include "kernels_impl.hpp"

namespace hzn::simd::detail {

cplx weighted_sum_scalar(std::span<const double> w, std::span<const cplx> f) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    re += w[k] * f[k].real();
    im += w[k] * f[k].imag();
  }
  return {re, im};
}

cplx geometric_rational_sum_scalar(cplx v, cplx a, std::size_t count) {
  cplx sum = 0.0;
  cplx p = 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    const cplx d = a + static_cast<double>(k);
    const double inv = 1.0 / std::norm(d);
    // p / d without the overflow guards of operator/.
    sum += cplx(p.real() * d.real() + p.imag() * d.imag(), p.imag() * d.real() - p.real() * d.imag()) * inv;
    p *= v;
  }
  return sum;
}

}  // namespace hzn::simd::detail
