#pragma once

// The Herglotz function F, the integrals J and T, their normalized forms and
// closed-form values, plus residual evaluators for the identities linking
// them to F(x; u, v).

#include <span>
#include <string>
#include <vector>

#include "hzn/hzn.hpp"

namespace hzn {

// gamma^2/2 + pi^2/12 + gamma_1, the constant in the two- and three-term
// relations for F.
double herglotz_constant();

// F(x) = int_0^1 (1/(1-t) + 1/log t) log(1 - t^x) dt/t, Re x > 0.
cplx herglotz_integral(cplx x, const QuadratureConfig& cfg = {});
// F(x) = sum_n (psi(n x) - log(n x))/n for x off (-inf, 0].
cplx herglotz_series(cplx x, double tol = 1e-14);
// Integral for Re x > 0, series otherwise or when the integral fails to converge.
cplx herglotz_eval(cplx x, const QuadratureConfig& cfg = {});

// J(x) = int_0^1 log(1 + t^x)/(1 + t) dt.
cplx j_integral(cplx x, const QuadratureConfig& cfg = {});
cplx j_eval(cplx x, const HznConfig& cfg = {});
cplx cal_j(cplx x, const QuadratureConfig& cfg = {});
cplx j_at_n(int n);
cplx j_inv_n(int n);
cplx j_even(int m);
cplx j_even_inv(int m);

struct LogSinSums {
  double s1, s1_closed;          // sum log sin(pi(2j+1)/2m)
  double s2_sin, s2_cos, s2_closed;  // sums of log sin and log cos at pi(2j+1)/4m
  double s3, s3_closed;          // sum j log sin(pi(2j+1)/2m)
};
LogSinSums logsin_sums(int m);

// T(x) = int_0^1 atan(t^x)/(1 + t^2) dt.
cplx t_integral(cplx x, const QuadratureConfig& cfg = {});
cplx t_from_hzn(cplx x, const QuadratureConfig& cfg = {});
cplx cal_t(cplx x, const QuadratureConfig& cfg = {});
cplx t_at_n(int n);
cplx t_inv_n(int n);

// F(x; 1, -1) - F(x/2) + F(x) - pi^2/(6x).
cplx conn_u1_vm1(cplx x, const QuadratureConfig& cfg = {});

struct LimitLadder {
  std::vector<double> eps;
  std::vector<double> residual;
  std::vector<double> decay_per_decade;  // residual ratio between neighbours, per factor 10 in eps
  bool monotone = false;
};

struct ConnLimitReport {
  LimitLadder part1;  // u = 1 - eps with v -> 1 taken first
  LimitLadder part3;  // u = -1, v = 1 - eps
};

// 1 - v used for the inner limit of part 1.
inline constexpr double kInnerLimitGap = 1e-12;

ConnLimitReport conn_limits(cplx x, std::span<const double> eps, const QuadratureConfig& cfg = {1e-10, 3, 13});

// J(x) - F(2x) + 2F(x) - F(x/2) - pi^2/(12x).
cplx jxfx_residual(cplx x, const QuadratureConfig& cfg = {});

struct ThreeTermResiduals {
  cplx r1;  // J through F at x, (x-1)/2, (x-1)/(2x)
  cplx r2;  // J(x) - J(x-1) + J(x/(x-1)) through F
  cplx r3;  // the same through F(.; 1, -1)
};
// Requires Re x > 1.
ThreeTermResiduals j_three_term_residuals(cplx x, const QuadratureConfig& cfg = {});

enum class FnTag { J, T, calJ, calT };
std::string fn_tag_name(FnTag tag);

struct SpecialValueRecord {
  FnTag fn_tag = FnTag::J;
  std::string argument;  // display form, e.g. "2-sqrt(3)" or "1/4"
  double arg_value = 0.0;
  cplx closed_form{};
  cplx direct{};
  double abs_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string reason;  // set when the direct evaluation failed
};

}  // namespace hzn
