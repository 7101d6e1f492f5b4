#pragma once

// The Herglotz-Zagier-Novikov function
//
//   F(x; u, v) = int_0^1 log(1 - u t^x) / (v^{-1} - t) dt,
//
// its double series continuation, and closed forms at rational x.

#include "hzn/numkernel.hpp"
#include "hzn/quad.hpp"

namespace hzn {

struct HznPoint {
  cplx x;
  cplx u;
  cplx v;
};

// Set membership with a small slack on |z| = 1 so that e^{i theta} samples
// count as unit-circle points.
inline constexpr double kUnitSlack = 1e-12;
bool in_unit_disk(cplx z);             // z != 0, |z| <= 1
bool in_unit_disk_not_one(cplx z);     // same, z != 1
bool on_unit_circle(cplx z);           // |z| = 1
bool on_unit_circle_not_one(cplx z);   // |z| = 1, z != 1

struct DomainClass {
  bool integral_valid = false;  // Re x > 0 and the curve u t^x avoids [1, inf)
  bool series_valid = false;    // |u| < 1 and |v| < 1
  bool u_disk = false, u_disk_not_one = false, u_circle = false, u_circle_not_one = false;
  bool v_disk = false, v_disk_not_one = false, v_circle = false, v_circle_not_one = false;
};

// Throws DomainError unless x is off (-inf, 0], u and v are nonzero, u is off
// (1, inf) and v is off [1, inf).
void validate(const HznPoint& p);
DomainClass classify(const HznPoint& p);

// True when 1 - u t^x stays off (-inf, 0] for all t in (0,1). Requires Re x > 0.
bool integral_curve_safe(const HznPoint& p);

// Quadrature of the defining integral. Throws BranchError if the curve is
// unsafe and ConvergenceError if quadrature does not settle.
cplx hzn_integral(const HznPoint& p, const QuadratureConfig& cfg = {});

// -sum_{m,n>=1} u^m v^n / (m (m x + n)) to absolute accuracy tol.
cplx hzn_series(const HznPoint& p, double tol = 1e-14);

struct HznConfig {
  QuadratureConfig quad{};
  double series_tol = 1e-14;
  // When both representations apply, evaluate both and require agreement.
  bool cross_check = false;
  double cross_tol = 1e-9;
};

// Integral when valid, otherwise the series. Throws DomainError when neither applies.
cplx hzn_eval(const HznPoint& p, const HznConfig& cfg = {});

// Closed form at x = p/q for u in the closed unit disk and v in the disk minus 1.
cplx hzn_rational(int p, int q, cplx u, cplx v);

// Closed forms at x = n and at x = 1/n with u = 1.
cplx hzn_at_n(int n, cplx u, cplx v);
cplx hzn_inv_n(int n, cplx v);

// F(x; u, v) + log(1 - u) log(1 - v) / 2, which is odd under (x, u, v) -> (1/x, v, u).
cplx frak_f(const HznPoint& p, const HznConfig& cfg = {});

struct LemmaIntEval {
  cplx closed;
  cplx quadrature;
};

// int_0^1 log(1 - alpha t) / (t (1 - beta t)) dt by dilogarithms and by quadrature.
LemmaIntEval lemma_int_eval(cplx alpha, cplx beta, const QuadratureConfig& cfg = {});

}  // namespace hzn
