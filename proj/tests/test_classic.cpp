#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hzn/classic.hpp"
#include "hzn/error.hpp"

using hzn::cplx;
namespace c = hzn::constants;

namespace {

const double pi2 = c::pi * c::pi;
const double l2 = c::log2;
const double c0 = 0.5 * c::euler_gamma * c::euler_gamma + pi2 / 12 + c::stieltjes_gamma1;

std::vector<cplx> right_half_samples(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k) {
    const double r = std::exp(std::log(0.1) + U(rng) * std::log(100.0));
    out.push_back(std::polar(r, 2.4 * U(rng) - 1.2));
  }
  return out;
}

cplx two_term_residual(cplx x) {
  const cplx l = hzn::plog(x);
  return hzn::herglotz_eval(x) + hzn::herglotz_eval(1.0 / x) -
         (-2.0 * c0 + 0.5 * l * l - pi2 * (x - 1.0) * (x - 1.0) / (6.0 * x));
}

cplx three_term_residual(cplx x) {
  return hzn::herglotz_eval(x) - hzn::herglotz_eval(x + 1.0) - hzn::herglotz_eval(x / (x + 1.0)) -
         (c0 + hzn::dilog(1.0 / (1.0 + x)));
}

}  // namespace

TEST_CASE("Herglotz function representations") {
  CHECK(std::abs(hzn::herglotz_constant() - c0) < 1e-16);
  CHECK(std::abs(hzn::herglotz_integral(1.0) + c0) < 1e-11);
  CHECK(std::abs(hzn::herglotz_series(1.0) + c0) < 1e-13);
  for (cplx x : {cplx(2.0), cplx(2.0, 1.0), cplx(0.05), cplx(0.3, -2.0), cplx(25.0, 3.0)}) {
    CAPTURE(x);
    CHECK(std::abs(hzn::herglotz_integral(x) - hzn::herglotz_series(x)) < 1e-9);
  }
  CHECK(std::abs(three_term_residual(1.0)) < 1e-10);
  const cplx l3 = std::log(3.0);
  CHECK(std::abs(hzn::herglotz_eval(3.0) + hzn::herglotz_eval(1.0 / 3) -
                 (-2.0 * c0 + 0.5 * l3 * l3 - pi2 * 4.0 / 18)) < 1e-10);
  CHECK_THROWS_AS(hzn::herglotz_series(-2.0), hzn::DomainError);
  CHECK_THROWS_AS(hzn::herglotz_integral(cplx(-0.5, 1.0)), hzn::DomainError);
}

TEST_CASE("Herglotz functional equations over sampled x") {
  for (cplx x : right_half_samples(5, 24)) {
    CAPTURE(x);
    CHECK(std::abs(two_term_residual(x)) < 1e-8);
    CHECK(std::abs(three_term_residual(x)) < 1e-8);
  }
  // Left half-plane goes through the series alone.
  for (cplx x : {cplx(-0.7, 0.4), cplx(-2.0, -1.5), cplx(-0.1, 3.0)}) {
    CAPTURE(x);
    CHECK(std::abs(two_term_residual(x)) < 1e-8);
    CHECK(std::abs(three_term_residual(x)) < 1e-8);
  }
}

TEST_CASE("J values and functional equation") {
  CHECK(std::abs(hzn::j_integral(1.0) - 0.5 * l2 * l2) < 1e-12);
  CHECK(std::abs(hzn::j_integral(2.0) - (0.75 * l2 * l2 - pi2 / 48)) < 1e-12);
  CHECK(std::abs(hzn::j_integral(c::pi) + hzn::j_integral(1.0 / c::pi) - l2 * l2) < 1e-12);
  for (cplx x : {cplx(1.0), cplx(0.4, 0.7), cplx(3.0, -1.0)}) {
    CHECK(std::abs(hzn::j_eval(x) - hzn::j_integral(x)) < 1e-10);
  }
  for (cplx x : right_half_samples(17, 100)) {
    CAPTURE(x);
    CHECK(std::abs(hzn::j_integral(x) + hzn::j_integral(1.0 / x) - l2 * l2) < 1e-9);
  }
  CHECK_THROWS_AS(hzn::j_integral(cplx(0.0, 1.0)), hzn::DomainError);
}

TEST_CASE("normalized J") {
  CHECK(std::abs(hzn::cal_j(1.0)) < 1e-12);
  const double e = std::exp(1.0);
  CHECK(std::abs(hzn::cal_j(e) + hzn::cal_j(1.0 / e)) < 1e-12);
  CHECK(std::abs(hzn::cal_j(2.0) - (0.25 * l2 * l2 + pi2 / 24)) < 1e-12);
}

TEST_CASE("J closed forms") {
  CHECK(std::abs(hzn::j_at_n(1) - 0.5 * l2 * l2) < 1e-15);
  CHECK(std::abs(hzn::j_at_n(2) - (0.75 * l2 * l2 - pi2 / 48)) < 1e-14);
  CHECK(std::abs(hzn::j_inv_n(2) - (l2 * l2 - hzn::j_at_n(2))) < 1e-14);
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(std::abs(hzn::j_at_n(n) - hzn::j_integral(n)) < 1e-8);
    CHECK(std::abs(hzn::j_inv_n(n) - hzn::j_integral(1.0 / n)) < 1e-8);
  }
  CHECK(std::abs(hzn::j_even(1) - (0.75 * l2 * l2 - pi2 / 48)) < 1e-14);
  CHECK(std::abs(hzn::j_even(2) - hzn::j_at_n(4)) < 1e-12);
  CHECK(std::abs(hzn::j_even(3) - hzn::j_integral(6.0)) < 1e-9);
  for (int m = 1; m <= 4; ++m) CHECK(std::abs(hzn::j_even_inv(m) - hzn::j_inv_n(2 * m)) < 1e-12);
  CHECK_THROWS_AS(hzn::j_at_n(0), hzn::DomainError);
}

TEST_CASE("log-sin sums") {
  auto s = hzn::logsin_sums(1);
  CHECK(std::abs(s.s1) < 1e-15);
  CHECK(std::abs(s.s2_sin + 0.5 * l2) < 1e-15);
  CHECK(std::abs(s.s2_cos + 0.5 * l2) < 1e-15);
  CHECK(std::abs(s.s3) < 1e-15);
  s = hzn::logsin_sums(2);
  CHECK(std::abs(s.s1 + l2) < 1e-15);
  CHECK(std::abs(s.s2_sin + 1.5 * l2) < 1e-15);
  CHECK(std::abs(s.s3 + 0.5 * l2) < 1e-15);
  for (int m = 1; m <= 50; ++m) {
    CAPTURE(m);
    s = hzn::logsin_sums(m);
    CHECK(std::abs(s.s1 - s.s1_closed) < 1e-13);
    CHECK(std::abs(s.s2_sin - s.s2_closed) < 1e-13);
    CHECK(std::abs(s.s2_cos - s.s2_closed) < 1e-13);
    CHECK(std::abs(s.s3 - s.s3_closed) < 1e-13);
  }
}

TEST_CASE("T values and functional equation") {
  CHECK(std::abs(hzn::t_integral(1.0) - pi2 / 32) < 1e-13);
  const double r2 = std::sqrt(2.0);
  CHECK(std::abs(hzn::t_integral(r2) + hzn::t_integral(1.0 / r2) - pi2 / 16) < 1e-12);
  const double silver = 3.0 + std::sqrt(8.0);
  CHECK(std::abs(hzn::t_integral(silver) - l2 * std::log(silver) / 16) < 1e-12);
  CHECK(std::abs(hzn::cal_t(1.0)) < 1e-13);
  CHECK(std::abs(hzn::cal_t(3.0) + hzn::cal_t(1.0 / 3)) < 1e-12);
  CHECK(std::abs(hzn::cal_t(1.0 / silver) - (pi2 / 32 - l2 * std::log(silver) / 16)) < 1e-12);
  for (cplx x : right_half_samples(17, 100)) {
    CAPTURE(x);
    CHECK(std::abs(hzn::t_integral(x) + hzn::t_integral(1.0 / x) - pi2 / 16) < 1e-9);
  }
}

TEST_CASE("T through F(x; u, v)") {
  CHECK(std::abs(hzn::t_from_hzn(1.0) - pi2 / 32) < 1e-10);
  CHECK(std::abs(hzn::t_from_hzn(2.0) - hzn::t_integral(2.0)) < 1e-9);
  for (double x : {0.3, 1.0, 2.5, 7.0}) CHECK(std::abs(hzn::t_from_hzn(x).imag()) < 1e-10);
  const double x = 1.7;
  const cplx i = hzn::kI;
  const cplx combo = 4.0 * hzn::t_from_hzn(x) + hzn::j_integral(x) + 2.0 * hzn::hzn_integral({x, i, -i}) +
                     2.0 * hzn::hzn_integral({x, -i, i});
  CHECK(std::abs(combo) < 1e-9);
}

TEST_CASE("T closed forms") {
  CHECK(std::abs(hzn::t_at_n(1) - pi2 / 32) < 1e-12);
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(std::abs(hzn::t_at_n(n) - hzn::t_integral(n)) < 1e-8);
    CHECK(std::abs(hzn::t_inv_n(n) - hzn::t_integral(1.0 / n)) < 1e-8);
  }
  CHECK(std::abs(hzn::t_at_n(3) + hzn::t_inv_n(3) - pi2 / 16) < 1e-14);
}

TEST_CASE("F(x; 1, -1) through F") {
  CHECK(std::abs(hzn::herglotz_eval(0.5) - hzn::herglotz_eval(1.0) + pi2 / 6 - (pi2 / 12 - 0.5 * l2 * l2)) < 1e-10);
  for (cplx x : {cplx(1.0), cplx(2.0), cplx(0.5), cplx(1.2, 0.8)}) {
    CAPTURE(x);
    CHECK(std::abs(hzn::conn_u1_vm1(x)) < 1e-9);
  }
}

TEST_CASE("compensated limits toward u, v = 1") {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  const auto at2 = hzn::conn_limits(2.0, eps);
  CHECK(at2.part1.monotone);
  for (double d : at2.part1.decay_per_decade) CHECK(d >= 5.0);
  const auto at15 = hzn::conn_limits(1.5, eps);
  CHECK(at15.part3.monotone);
  const auto at1 = hzn::conn_limits(1.0, std::vector<double>{1e-2, 1e-4, 1e-6});
  CHECK(at1.part3.monotone);
  CHECK(at1.part3.residual.back() < 1e-4);
  const std::vector<double> bad{1e-2, 1e-1};
  CHECK_THROWS_AS(hzn::conn_limits(1.0, bad), hzn::DomainError);
}

TEST_CASE("J through F") {
  for (cplx x : {cplx(1.0), cplx(2.0), cplx(0.3), cplx(0.8, 1.1)}) {
    CAPTURE(x);
    CHECK(std::abs(hzn::jxfx_residual(x)) < 1e-9);
  }
}

TEST_CASE("three-term relations for J") {
  for (cplx x : {cplx(2.0), cplx(3.5), cplx(2.0, 0.5)}) {
    CAPTURE(x);
    const auto r = hzn::j_three_term_residuals(x);
    CHECK(std::abs(r.r1) < 1e-8);
    CHECK(std::abs(r.r2) < 1e-8);
    CHECK(std::abs(r.r3) < 1e-8);
  }
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 12; ++k) {
    const cplx x(1.1 + 6.0 * U(rng), 4.0 * U(rng) - 2.0);
    CAPTURE(x);
    const auto r = hzn::j_three_term_residuals(x);
    CHECK(std::abs(r.r2 - r.r3) < 1e-10);
  }
  CHECK_THROWS_AS(hzn::j_three_term_residuals(cplx(0.9, 1.0)), hzn::DomainError);
}
