#include "hzn/hzn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hzn/error.hpp"
#include "hzn/simd_kernels.hpp"

namespace hzn {

namespace {

using constants::pi;

// Pole subtraction applies when 1/v lies within this distance of (0,1),
// away from both endpoints.
constexpr double kPoleWindow = 0.05;

bool on_ray(cplx z, double from, bool closed) {
  return z.imag() == 0.0 && (closed ? z.real() >= from : z.real() > from);
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// log(1 - u t^x), keeping precision when u t^x is small or close to 1.
// Integral over (0,1), split at `at` when it lies well inside the interval so
// that a near-singularity there sits at a subinterval endpoint.
cplx integrate_split(const Integrand01& h, double at, const QuadratureConfig& cfg, const char* what) {
  if (!(at > 0.02 && at < 0.98)) return require_converged(integrate_01(h, cfg), what);
  const double rest = 1.0 - at;
  const auto left = integrate_01([&](double s, double oms) { return at * h(at * s, rest + at * oms); }, cfg);
  const auto right = integrate_01([&](double s, double oms) { return rest * h(at + rest * s, rest * oms); }, cfg);
  return require_converged(left, what) + require_converged(right, what);
}

cplx log_one_minus_u_tx(cplx u, cplx x, double t, double omt) {
  const double log_t = t < 0.5 ? std::log(t) : std::log1p(-omt);
  const cplx xl = x * log_t;
  const cplx utx = u * std::exp(xl);
  if (std::norm(utx) < 0.25) return clog1p(-utx);
  return plog((1.0 - u) - u * cexpm1(xl));
}

cplx dilog_at(cplx z, const char* where, int j, int k) {
  try {
    return dilog(z);
  } catch (const CutError&) {
    throw CutError(std::string(where) + ": dilogarithm argument " + fmt(z) + " on the cut (1, inf) for root indices j=" +
                   std::to_string(j) + ", k=" + std::to_string(k));
  }
}

void require_disk(cplx z, const char* name, const char* fn, bool exclude_one) {
  const bool ok = exclude_one ? in_unit_disk_not_one(z) : in_unit_disk(z);
  if (!ok) {
    throw DomainError(std::string(fn) + ": " + name + " = " + fmt(z) +
                      (exclude_one ? " must satisfy 0 < |z| <= 1, z != 1" : " must satisfy 0 < |z| <= 1"));
  }
}

}  // namespace

bool in_unit_disk(cplx z) { return z != cplx(0.0, 0.0) && std::abs(z) <= 1.0 + kUnitSlack; }
bool in_unit_disk_not_one(cplx z) { return in_unit_disk(z) && z != cplx(1.0, 0.0); }
bool on_unit_circle(cplx z) { return std::abs(std::abs(z) - 1.0) <= kUnitSlack; }
bool on_unit_circle_not_one(cplx z) { return on_unit_circle(z) && z != cplx(1.0, 0.0); }

void validate(const HznPoint& p) {
  if (!std::isfinite(std::abs(p.x)) || !std::isfinite(std::abs(p.u)) || !std::isfinite(std::abs(p.v))) {
    throw DomainError("hzn: non-finite argument");
  }
  if (p.x.imag() == 0.0 && p.x.real() <= 0.0) {
    throw DomainError("hzn: x = " + fmt(p.x) + " lies on (-inf, 0]");
  }
  if (p.u == cplx(0.0, 0.0) || p.v == cplx(0.0, 0.0)) throw DomainError("hzn: u and v must be nonzero");
  if (on_ray(p.u, 1.0, false)) throw DomainError("hzn: u = " + fmt(p.u) + " lies on (1, inf)");
  if (on_ray(p.v, 1.0, true)) throw DomainError("hzn: v = " + fmt(p.v) + " lies on [1, inf)");
}

bool integral_curve_safe(const HznPoint& p) {
  if (!(p.x.real() > 0.0)) return false;
  const double r = std::abs(p.u);
  if (r <= 1.0 || p.x.imag() == 0.0) return true;
  // On [t0, 1) with t0 = |u|^{-1/Re x}, |u t^x| >= 1 and the argument
  // arg u + Im x log t sweeps monotonically between the two endpoint values.
  const double a0 = std::arg(p.u);
  const double a1 = a0 - p.x.imag() * std::log(r) / p.x.real();
  const double lo = std::min(a0, a1) / (2.0 * pi);
  const double hi = std::max(a0, a1) / (2.0 * pi);
  return std::floor(hi) < std::ceil(lo);
}

DomainClass classify(const HznPoint& p) {
  validate(p);
  DomainClass d;
  d.integral_valid = integral_curve_safe(p);
  d.series_valid = std::abs(p.u) < 1.0 && std::abs(p.v) < 1.0;
  d.u_disk = in_unit_disk(p.u);
  d.u_disk_not_one = in_unit_disk_not_one(p.u);
  d.u_circle = on_unit_circle(p.u);
  d.u_circle_not_one = on_unit_circle_not_one(p.u);
  d.v_disk = in_unit_disk(p.v);
  d.v_disk_not_one = in_unit_disk_not_one(p.v);
  d.v_circle = on_unit_circle(p.v);
  d.v_circle_not_one = on_unit_circle_not_one(p.v);
  return d;
}

cplx hzn_integral(const HznPoint& p, const QuadratureConfig& cfg) {
  validate(p);
  if (!(p.x.real() > 0.0)) throw DomainError("hzn_integral: requires Re x > 0, got x = " + fmt(p.x));
  if (!integral_curve_safe(p)) {
    throw BranchError("hzn_integral: u t^x crosses [1, inf) for u = " + fmt(p.u) + ", x = " + fmt(p.x));
  }
  // v^{-1} - t = (1 - v)/v + (1 - t)
  const cplx shift = (1.0 - p.v) / p.v;
  const cplx pole = 1.0 / p.v;
  // For |u| > 1, |u t^x| crosses 1 at t = |u|^{-1/Re x}, where the log may pass
  // close to its branch point.
  const double split = std::abs(p.u) > 1.0 ? std::pow(std::abs(p.u), -1.0 / p.x.real()) : 0.0;
  if (pole.real() > kPoleWindow && pole.real() < 1.0 - kPoleWindow && std::abs(pole.imag()) < kPoleWindow) {
    // Pole close to the interior of (0,1): integrate (g(t) - g(a))/(a - t) and
    // add g(a) times the exact integral of 1/(a - t).
    const cplx g_pole = plog(1.0 - p.u * std::exp(p.x * plog(pole)));
    const auto h = [&](double t, double omt) {
      return (log_one_minus_u_tx(p.u, p.x, t, omt) - g_pole) / (shift + omt);
    };
    return integrate_split(h, split, cfg, "hzn_integral") + g_pole * (plog(pole) - plog(shift));
  }
  const auto h = [&](double t, double omt) { return log_one_minus_u_tx(p.u, p.x, t, omt) / (shift + omt); };
  return integrate_split(h, split, cfg, "hzn_integral");
}

cplx hzn_series(const HznPoint& p, double tol) {
  validate(p);
  const double a = std::abs(p.u);
  const double b = std::abs(p.v);
  if (!(a < 1.0) || !(b < 1.0)) throw DomainError("hzn_series: requires |u| < 1 and |v| < 1");
  if (!(tol > 0.0)) throw DomainError("hzn_series: tolerance must be positive");
  const double log_b = std::log(b);

  cplx total = 0.0;
  cplx um = 1.0;
  for (long m = 1;; ++m) {
    um *= p.u;
    const cplx mx = static_cast<double>(m) * p.x;
    // Per-m budget so that sum_m |u|^m/m * budget_m <= tol/2.
    const double budget = tol * static_cast<double>(m) * (1.0 - a) / (2.0 * a);
    auto tail = [&](long n) {
      const double re_next = mx.real() + static_cast<double>(n + 1);
      const double d_min = re_next >= 0.0 ? std::abs(mx + static_cast<double>(n + 1)) : std::abs(mx.imag());
      return std::pow(b, static_cast<double>(n + 1)) / ((1.0 - b) * d_min);
    };
    long n = std::max(1L, static_cast<long>(std::ceil(std::log(budget * (1.0 - b)) / log_b)));
    while (tail(n) > budget) n += std::max(1L, n / 4);
    const cplx inner = p.v * simd::geometric_rational_sum(p.v, mx + 1.0, static_cast<std::size_t>(n));
    total += um / static_cast<double>(m) * inner;

    // Bound on all remaining m: |S_m'| <= |v| / ((1 - |v|) min_n |m' x + n|).
    const double d_low = p.x.real() >= 0.0 ? 1.0 : static_cast<double>(m + 1) * std::abs(p.x.imag());
    const double rest = std::pow(a, static_cast<double>(m + 1)) / (static_cast<double>(m + 1) * (1.0 - a)) * b /
                        ((1.0 - b) * d_low);
    if (rest < 0.5 * tol) break;
    if (m > 50'000'000) throw ConvergenceError("hzn_series: outer sum did not terminate");
  }
  return -total;
}

cplx hzn_eval(const HznPoint& p, const HznConfig& cfg) {
  const DomainClass d = classify(p);
  if (d.integral_valid) {
    const cplx value = hzn_integral(p, cfg.quad);
    if (cfg.cross_check && d.series_valid) {
      const cplx other = hzn_series(p, cfg.series_tol);
      if (std::abs(value - other) > cfg.cross_tol) {
        throw EvaluationError("hzn_eval: integral " + fmt(value) + " and series " + fmt(other) + " disagree");
      }
    }
    return value;
  }
  if (d.series_valid) return hzn_series(p, cfg.series_tol);
  throw DomainError("hzn_eval: no valid representation at x = " + fmt(p.x) + ", u = " + fmt(p.u) + ", v = " +
                    fmt(p.v));
}

cplx hzn_rational(int p, int q, cplx u, cplx v) {
  if (p < 1 || q < 1) throw DomainError("hzn_rational: p and q must be positive");
  require_disk(u, "u", "hzn_rational", false);
  require_disk(v, "v", "hzn_rational", true);
  const cplx u_root = proot(u, p);
  const cplx v_root = proot(v, q);
  const auto alphas = roots_of_unity(p);
  const auto betas = roots_of_unity(q);
  cplx sum = static_cast<double>(q) / p * dilog_at(u, "hzn_rational", 0, 0);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < q; ++k) {
      const cplx bv = betas[static_cast<std::size_t>(k)] * v_root;
      const cplx au = alphas[static_cast<std::size_t>(j)] * u_root;
      sum += dilog_at(bv / (bv - 1.0), "hzn_rational", j + 1, k + 1) -
             dilog_at((au - bv) / (1.0 - bv), "hzn_rational", j + 1, k + 1);
    }
  }
  return sum;
}

cplx hzn_at_n(int n, cplx u, cplx v) {
  if (n < 1) throw DomainError("hzn_at_n: n must be positive");
  require_disk(u, "u", "hzn_at_n", false);
  require_disk(v, "v", "hzn_at_n", true);
  const cplx u_root = proot(u, n);
  cplx sum = static_cast<double>(n) * dilog_at(v / (v - 1.0), "hzn_at_n", 0, 0) +
             dilog_at(u, "hzn_at_n", 0, 0) / static_cast<double>(n);
  const auto roots = roots_of_unity(n);
  for (int j = 0; j < n; ++j) {
    sum -= dilog_at((u_root * roots[static_cast<std::size_t>(j)] - v) / (1.0 - v), "hzn_at_n", j + 1, 0);
  }
  return sum;
}

cplx hzn_inv_n(int n, cplx v) {
  if (n < 1) throw DomainError("hzn_inv_n: n must be positive");
  require_disk(v, "v", "hzn_inv_n", true);
  const cplx v_root = proot(v, n);
  cplx sum = -dilog(v) / static_cast<double>(n);
  const auto roots = roots_of_unity(n);
  for (int j = 0; j < n; ++j) {
    const cplx w = 1.0 - v_root * roots[static_cast<std::size_t>(j)];
    if (w.imag() == 0.0 && w.real() <= 0.0) {
      throw BranchError("hzn_inv_n: logarithm argument " + fmt(w) + " on (-inf, 0] at j=" + std::to_string(j + 1));
    }
    const cplx l = plog(w);
    sum -= 0.5 * l * l;
  }
  return sum;
}

cplx frak_f(const HznPoint& p, const HznConfig& cfg) {
  if (p.u == cplx(1.0, 0.0) || p.v == cplx(1.0, 0.0)) throw DomainError("frak_f: u = 1 and v = 1 are excluded");
  return hzn_eval(p, cfg) + 0.5 * plog(1.0 - p.u) * plog(1.0 - p.v);
}

LemmaIntEval lemma_int_eval(cplx alpha, cplx beta, const QuadratureConfig& cfg) {
  // alpha = 1 keeps the integral finite, so only beta must avoid 1.
  require_disk(alpha, "alpha", "lemma_int_eval", false);
  require_disk(beta, "beta", "lemma_int_eval", true);
  LemmaIntEval out;
  out.closed = dilog(beta / (beta - 1.0)) - dilog((alpha - beta) / (1.0 - beta));
  const cplx one_minus_alpha = 1.0 - alpha;
  const cplx one_minus_beta = 1.0 - beta;
  const auto r = integrate_01(
      [&](double t, double omt) {
        const cplx at = alpha * t;
        const cplx num = std::norm(at) < 0.25 ? clog1p(-at) : plog(one_minus_alpha + alpha * omt);
        return num / (t * (one_minus_beta + beta * omt));
      },
      cfg);
  out.quadrature = require_converged(r, "lemma_int_eval");
  return out;
}

}  // namespace hzn
