#include <random>
#include <vector>

#include "doctest.h"
#include "hzn/simd_kernels.hpp"

using hzn::cplx;
namespace simd = hzn::simd;

namespace {

std::vector<const simd::KernelTable*> variants() {
  std::vector<const simd::KernelTable*> out{&simd::scalar_kernels()};
  if (const auto* t = simd::avx2_kernels()) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("active backend is one of the available variants") {
  const auto& k = simd::kernels();
  MESSAGE("backend: " << simd::backend_name(k.backend));
  bool found = false;
  for (const auto* t : variants()) found = found || t->backend == k.backend;
  CHECK(found);
}

TEST_CASE("weighted_sum variants agree") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 4099u}) {
    CAPTURE(n);
    std::vector<double> w(n);
    std::vector<cplx> f(n);
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = U(rng);
      f[k] = cplx(U(rng), U(rng)) * 1e3;
      scale += std::abs(w[k] * f[k]);
    }
    const cplx ref = simd::scalar_kernels().weighted_sum(w, f);
    for (const auto* t : variants()) CHECK(std::abs(t->weighted_sum(w, f) - ref) <= 1e-14 * (scale + 1.0));
  }
}

TEST_CASE("geometric_rational_sum variants agree") {
  struct Case {
    cplx v, a;
    std::size_t count;
  };
  const Case cases[] = {
      {cplx(0.5, 0.3), cplx(2.0, 1.0), 3},       {cplx(-0.9, 0.0), cplx(1.0, 0.0), 500},
      {cplx(0.2, -0.85), cplx(3.5, -2.0), 101},  {cplx(0.99, 0.0), cplx(-0.5, 4.0), 2000},
      {cplx(0.0, 0.7), cplx(10.0, 0.0), 9},
  };
  for (const auto& c : cases) {
    CAPTURE(c.count);
    // Direct definition.
    cplx direct = 0.0;
    cplx p = 1.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < c.count; ++k) {
      direct += p / (c.a + static_cast<double>(k));
      scale += std::abs(p / (c.a + static_cast<double>(k)));
      p *= c.v;
    }
    for (const auto* t : variants()) {
      CHECK(std::abs(t->geometric_rational_sum(c.v, c.a, c.count) - direct) <= 1e-13 * scale);
    }
  }
}
