#include "hzn/quad.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "hzn/error.hpp"
#include "hzn/simd_kernels.hpp"

namespace hzn {

namespace {

using constants::pi;

// Abscissae beyond these limits are within 1e-300 of an endpoint.
constexpr double kTanhSinhTauMax = 6.09;
constexpr double kExpSinhTauMin = -6.78;
constexpr double kExpSinhTauMax = 3.5;

// Nodes first introduced at one refinement level: level 0 has step 1 and all
// integer tau, level L >= 1 has the odd multiples of 2^-L.
struct LevelNodes {
  std::vector<double> t;
  std::vector<double> omt;  // 1 - t, used only on (0,1)
  std::vector<double> w;
};

template <typename Push>
void for_each_tau(int level, double tau_lo, double tau_hi, Push&& push) {
  if (level == 0) {
    for (double tau = std::ceil(tau_lo); tau <= tau_hi; tau += 1.0) push(tau);
    return;
  }
  const double h = std::ldexp(1.0, -level);
  const long k_lo = static_cast<long>(std::floor(tau_lo / h));
  const long k_hi = static_cast<long>(std::ceil(tau_hi / h));
  for (long k = k_lo; k <= k_hi; ++k) {
    if ((k & 1L) == 0) continue;
    const double tau = static_cast<double>(k) * h;
    if (tau >= tau_lo && tau <= tau_hi) push(tau);
  }
}

LevelNodes build_tanh_sinh(int level) {
  LevelNodes n;
  for_each_tau(level, 0.0, kTanhSinhTauMax, [&](double tau) {
    const double s = 0.5 * pi * std::sinh(tau);
    const double e = std::exp(-2.0 * s);
    const double t = 1.0 / (1.0 + e);
    const double omt = e / (1.0 + e);
    const double w = pi * std::cosh(tau) * t * omt;
    if (w == 0.0 || omt == 0.0) return;
    n.t.push_back(t);
    n.omt.push_back(omt);
    n.w.push_back(w);
    if (tau != 0.0) {
      // Mirror node -tau swaps t and 1 - t.
      n.t.push_back(omt);
      n.omt.push_back(t);
      n.w.push_back(w);
    }
  });
  return n;
}

LevelNodes build_exp_sinh(int level) {
  LevelNodes n;
  for_each_tau(level, kExpSinhTauMin, kExpSinhTauMax, [&](double tau) {
    const double s = 0.5 * pi * std::sinh(tau);
    const double t = std::exp(s);
    const double w = t * 0.5 * pi * std::cosh(tau);
    if (t == 0.0 || w == 0.0) return;
    n.t.push_back(t);
    n.w.push_back(w);
  });
  return n;
}

// Lazily built, immutable per-level tables.
class NodeCache {
 public:
  using Builder = LevelNodes (*)(int);
  explicit NodeCache(Builder b) : build_(b) {}

  const LevelNodes& level(int l) {
    std::call_once(flags_[static_cast<std::size_t>(l)],
                   [&] { levels_[static_cast<std::size_t>(l)] = build_(l); });
    return levels_[static_cast<std::size_t>(l)];
  }

 private:
  Builder build_;
  std::array<std::once_flag, kMaxQuadLevel + 1> flags_;
  std::array<LevelNodes, kMaxQuadLevel + 1> levels_;
};

NodeCache& tanh_sinh_cache() {
  static NodeCache cache(&build_tanh_sinh);
  return cache;
}

NodeCache& exp_sinh_cache() {
  static NodeCache cache(&build_exp_sinh);
  return cache;
}

template <typename Eval>
QuadratureResult refine(NodeCache& cache, const QuadratureConfig& cfg, Eval&& eval_level) {
  cfg.validate();
  std::vector<cplx> values;
  cplx raw = eval_level(cache.level(0), values);
  cplx prev = raw;
  QuadratureResult r;
  r.value = prev;
  r.err_estimate = std::abs(prev);
  int streak = 0;
  for (int l = 1; l <= cfg.max_level; ++l) {
    raw += eval_level(cache.level(l), values);
    const cplx cur = raw * std::ldexp(1.0, -l);
    const double diff = std::abs(cur - prev);
    streak = diff <= cfg.target_abs_tol ? streak + 1 : 0;
    r.value = cur;
    r.err_estimate = diff;
    r.levels_used = l;
    prev = cur;
    if (l >= cfg.min_level && streak >= 2) {
      r.converged = true;
      break;
    }
  }
  return r;
}

void check_finite(cplx v, double t) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError("quadrature: integrand is not finite at t = " + std::to_string(t));
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(target_abs_tol > 0.0)) throw DomainError("quadrature: target_abs_tol must be positive");
  if (min_level < 1 || min_level > max_level || max_level > kMaxQuadLevel) {
    throw DomainError("quadrature: require 1 <= min_level <= max_level <= 14");
  }
}

QuadratureResult integrate_01(const Integrand01& f, const QuadratureConfig& cfg) {
  return refine(tanh_sinh_cache(), cfg, [&](const LevelNodes& n, std::vector<cplx>& vals) {
    vals.resize(n.t.size());
    for (std::size_t k = 0; k < n.t.size(); ++k) {
      vals[k] = f(n.t[k], n.omt[k]);
      check_finite(vals[k], n.t[k]);
    }
    return simd::weighted_sum(n.w, vals);
  });
}

QuadratureResult integrate_01(const Integrand& f, const QuadratureConfig& cfg) {
  return integrate_01([&](double t, double) { return f(t); }, cfg);
}

QuadratureResult integrate_0inf(const Integrand& f, const QuadratureConfig& cfg) {
  return refine(exp_sinh_cache(), cfg, [&](const LevelNodes& n, std::vector<cplx>& vals) {
    vals.resize(n.t.size());
    for (std::size_t k = 0; k < n.t.size(); ++k) {
      vals[k] = f(n.t[k]);
      check_finite(vals[k], n.t[k]);
    }
    return simd::weighted_sum(n.w, vals);
  });
}

cplx require_converged(const QuadratureResult& r, const char* what) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge (error estimate " +
                           std::to_string(r.err_estimate) + " after " + std::to_string(r.levels_used) +
                           " levels)");
  }
  return r.value;
}

}  // namespace hzn
