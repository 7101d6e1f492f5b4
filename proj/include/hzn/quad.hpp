#pragma once

// Double-exponential quadrature for complex integrands on (0,1) and (0,inf).

#include <functional>

#include "hzn/numkernel.hpp"

namespace hzn {

inline constexpr int kMaxQuadLevel = 14;

struct QuadratureConfig {
  double target_abs_tol = 1e-12;
  int min_level = 3;
  int max_level = 12;

  // Throws DomainError unless tol > 0 and 1 <= min_level <= max_level <= 14.
  void validate() const;
};

struct QuadratureResult {
  cplx value{};
  double err_estimate = 0.0;
  int levels_used = 0;
  bool converged = false;
};

// Integrand on (0,1) receiving both t and 1 - t; the second argument is
// exact near the right endpoint, so use it instead of forming 1 - t.
using Integrand01 = std::function<cplx(double t, double one_minus_t)>;
using Integrand = std::function<cplx(double t)>;

// Tanh-sinh. Error estimate is the difference between successive levels;
// convergence needs two consecutive differences below tolerance. Throws
// EvaluationError if the integrand produces a non-finite value.
QuadratureResult integrate_01(const Integrand01& f, const QuadratureConfig& cfg = {});
QuadratureResult integrate_01(const Integrand& f, const QuadratureConfig& cfg = {});

// Exp-sinh, for integrands decaying at least exponentially.
QuadratureResult integrate_0inf(const Integrand& f, const QuadratureConfig& cfg = {});

// Returns the value of a converged result; throws ConvergenceError otherwise.
cplx require_converged(const QuadratureResult& r, const char* what);

}  // namespace hzn
