#include "hzn/classic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hzn/error.hpp"

namespace hzn {

namespace {

using constants::euler_gamma;
using constants::log2;
using constants::pi;

constexpr double pi2 = pi * pi;

// Below this 1 - t the bracket 1/(1-t) + 1/log t is taken from its series.
constexpr double kBracketSwitch = 1e-3;

// Series partial sums stop once |N x| cos(arg x / 2) reaches this or the
// tolerance-derived radius, whichever is larger.
constexpr double kMinAsymptoticRadius = 12.0;
constexpr long kMaxSeriesTerms = 1'000'000;

void require_right_half(cplx x, const char* fn) {
  if (!(x.real() > 0.0)) throw DomainError(std::string(fn) + ": requires Re x > 0");
}

double log_of(double s, double oms) { return s < 0.5 ? std::log(s) : std::log1p(-oms); }

cplx log_one_minus_exp(cplx xl) {
  const cplx e = std::exp(xl);
  if (std::norm(e) < 0.25) return clog1p(-e);
  return plog(-cexpm1(xl));
}

cplx log_one_plus_exp(cplx xl) {
  const cplx e = std::exp(xl);
  if (std::norm(e) < 0.25) return clog1p(e);
  return plog(2.0 + cexpm1(xl));
}

double herglotz_bracket(double log_t, double omt) {
  if (omt < kBracketSwitch) {
    const double w = omt;
    return 0.5 + w * (1.0 / 12 + w * (1.0 / 24 + w * (19.0 / 720 + w * (3.0 / 160))));
  }
  return 1.0 / omt + 1.0 / log_t;
}

// e^{pi i num / den}, exact at multiples of a quarter turn.
cplx half_turns(long num, long den) {
  num %= 2 * den;
  if (num > den) num -= 2 * den;
  if (num <= -den) num += 2 * den;
  if (num == 0) return 1.0;
  if (num == den) return -1.0;
  if (2 * num == den) return kI;
  if (2 * num == -den) return -kI;
  return std::polar(1.0, pi * static_cast<double>(num) / static_cast<double>(den));
}

cplx dilog_indexed(cplx z, const char* fn, int j) {
  try {
    return dilog(z);
  } catch (const CutError& e) {
    throw CutError(std::string(fn) + ": term j=" + std::to_string(j) + ": " + e.what());
  }
}

cplx sq(cplx z) { return z * z; }

cplx frak_sum_logs(cplx x) {
  // log^2 2 + log^2(2x) + log^2(x/(x-1)) - log^2(2(x-1)), halved.
  return 0.5 * (log2 * log2 + sq(plog(2.0 * x)) + sq(plog(x / (x - 1.0))) - sq(plog(2.0 * (x - 1.0))));
}

LimitLadder make_ladder(std::span<const double> eps, std::vector<double> residual) {
  LimitLadder out;
  out.eps.assign(eps.begin(), eps.end());
  out.residual = std::move(residual);
  out.monotone = true;
  for (std::size_t i = 0; i + 1 < out.residual.size(); ++i) {
    const double decades = std::log10(out.eps[i] / out.eps[i + 1]);
    out.decay_per_decade.push_back(std::pow(out.residual[i] / out.residual[i + 1], 1.0 / decades));
    out.monotone = out.monotone && out.residual[i + 1] < out.residual[i];
  }
  return out;
}

}  // namespace

double herglotz_constant() { return 0.5 * euler_gamma * euler_gamma + pi2 / 12 + constants::stieltjes_gamma1; }

cplx herglotz_integral(cplx x, const QuadratureConfig& cfg) {
  require_right_half(x, "herglotz_integral");
  // t = s^k keeps the integrand bounded at s = 0 when Re x < 1.
  const double k = std::max(1.0, 1.0 / x.real());
  const auto r = integrate_01(
      [&](double s, double oms) {
        const double log_t = k * log_of(s, oms);
        const double omt = k == 1.0 ? oms : -std::expm1(log_t);
        return herglotz_bracket(log_t, omt) * log_one_minus_exp(x * log_t) * (k / s);
      },
      cfg);
  return require_converged(r, "herglotz_integral");
}

cplx herglotz_series(cplx x, double tol) {
  if (x.imag() == 0.0 && x.real() <= 0.0) throw DomainError("herglotz_series: x lies on (-inf, 0]");
  if (!(tol > 0.0)) throw DomainError("herglotz_series: tolerance must be positive");
  constexpr int terms = 8;
  // Remainder of the asymptotic expansion after `terms` terms is about
  // |B_18| / (18 R^18) at radius R.
  const double radius = std::max(kMinAsymptoticRadius, std::pow(4.0 / tol, 1.0 / (2 * terms + 2)));
  const double cos_half = std::cos(0.5 * std::arg(x));
  const double need = std::ceil(radius / (std::abs(x) * cos_half));
  if (!(need <= static_cast<double>(kMaxSeriesTerms))) {
    throw ConvergenceError("herglotz_series: x too close to the negative axis for the accelerated series");
  }
  const long n_max = std::max(1L, static_cast<long>(need));

  cplx sum = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    sum += digamma_minus_log(nd * x) / nd;
  }
  // sum_{n > N} (1/n) (-1/(2 n x) - sum_k B_2k / (2k (n x)^{2k})).
  const double a = static_cast<double>(n_max + 1);
  sum -= hurwitz_zeta(2, a) / (2.0 * x);
  const cplx x2 = x * x;
  cplx xpow = 1.0;
  for (int j = 1; j <= terms; ++j) {
    xpow *= x2;
    sum -= constants::bernoulli_even[static_cast<std::size_t>(j - 1)] / (2.0 * j) * hurwitz_zeta(2 * j + 1, a) / xpow;
  }
  return sum;
}

cplx herglotz_eval(cplx x, const QuadratureConfig& cfg) {
  if (x.real() <= 0.0) return herglotz_series(x);
  try {
    return herglotz_integral(x, cfg);
  } catch (const ConvergenceError&) {
    // Near the imaginary axis the substituted integrand oscillates too fast.
    return herglotz_series(x);
  }
}

cplx j_integral(cplx x, const QuadratureConfig& cfg) {
  require_right_half(x, "j_integral");
  const auto r = integrate_01(
      [&](double t, double omt) { return log_one_plus_exp(x * log_of(t, omt)) / (2.0 - omt); }, cfg);
  return require_converged(r, "j_integral");
}

cplx j_eval(cplx x, const HznConfig& cfg) { return -hzn_eval({x, -1.0, -1.0}, cfg); }

cplx cal_j(cplx x, const QuadratureConfig& cfg) {
  return j_integral(x, cfg) - 0.5 * log2 * log2 + pi2 / 24 * (x - 1.0 / x);
}

namespace {

cplx j_dilog_sum(int n, const char* fn) {
  cplx sum = 0.0;
  for (int j = 1; j <= n; ++j) sum += dilog_indexed(0.5 * (1.0 + half_turns(2 * j + 1, n)), fn, j);
  return sum;
}

double log_sin_cos_sum(int m) {
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    const double th = pi * (2 * j + 1) / (4.0 * m);
    sum += std::log(std::sin(th)) * std::log(std::cos(th));
  }
  return sum;
}

void require_positive(int n, const char* fn) {
  if (n < 1) throw DomainError(std::string(fn) + ": argument must be at least 1");
}

}  // namespace

cplx j_at_n(int n) {
  require_positive(n, "j_at_n");
  const double nd = n;
  return pi2 / 12 * (1.0 / nd - nd) + 0.5 * nd * log2 * log2 + j_dilog_sum(n, "j_at_n");
}

cplx j_inv_n(int n) {
  require_positive(n, "j_inv_n");
  const double nd = n;
  return pi2 / 12 * (nd - 1.0 / nd) + (1.0 - 0.5 * nd) * log2 * log2 - j_dilog_sum(n, "j_inv_n");
}

cplx j_even(int m) {
  require_positive(m, "j_even");
  const double md = m;
  return pi2 / 48 * (1.0 / md - 2.0 * md) + md * log2 * log2 - log_sin_cos_sum(m);
}

cplx j_even_inv(int m) {
  require_positive(m, "j_even_inv");
  const double md = m;
  return pi2 / 48 * (2.0 * md - 1.0 / md) + (1.0 - md) * log2 * log2 + log_sin_cos_sum(m);
}

LogSinSums logsin_sums(int m) {
  require_positive(m, "logsin_sums");
  // The weighted sum reaches ~0.35 m^2 in size, so accumulate in extended
  // precision and round once.
  using ld = long double;
  const ld pi_l = 3.141592653589793238462643383279502884L;
  const ld log2_l = 0.693147180559945309417232121458176568L;
  const ld md = m;
  ld s1 = 0, s2_sin = 0, s2_cos = 0, s3 = 0;
  for (int j = 0; j < m; ++j) {
    const ld half = std::log(std::sin(pi_l * (2 * j + 1) / (2 * md)));
    const ld quarter = pi_l * (2 * j + 1) / (4 * md);
    s1 += half;
    s3 += j * half;
    s2_sin += std::log(std::sin(quarter));
    s2_cos += std::log(std::cos(quarter));
  }
  LogSinSums out{};
  out.s1 = static_cast<double>(s1);
  out.s2_sin = static_cast<double>(s2_sin);
  out.s2_cos = static_cast<double>(s2_cos);
  out.s3 = static_cast<double>(s3);
  out.s1_closed = static_cast<double>((1 - md) * log2_l);
  out.s2_closed = static_cast<double>((0.5L - md) * log2_l);
  out.s3_closed = static_cast<double>(-0.5L * (md - 1) * (md - 1) * log2_l);
  return out;
}

cplx t_integral(cplx x, const QuadratureConfig& cfg) {
  require_right_half(x, "t_integral");
  const bool real_x = x.imag() == 0.0;
  const auto r = integrate_01(
      [&](double t, double omt) -> cplx {
        const double log_t = log_of(t, omt);
        if (real_x) return std::atan(std::exp(x.real() * log_t)) / (1.0 + t * t);
        return std::atan(std::exp(x * log_t)) / (1.0 + t * t);
      },
      cfg);
  return require_converged(r, "t_integral");
}

cplx t_from_hzn(cplx x, const QuadratureConfig& cfg) {
  const cplx i = kI;
  return 0.25 * (hzn_integral({x, i, i}, cfg) + hzn_integral({x, -i, -i}, cfg) - hzn_integral({x, i, -i}, cfg) -
                 hzn_integral({x, -i, i}, cfg));
}

cplx cal_t(cplx x, const QuadratureConfig& cfg) { return t_integral(x, cfg) - pi2 / 32; }

cplx t_at_n(int n) {
  require_positive(n, "t_at_n");
  const cplx a(0.5, 0.5);
  const cplx b(0.5, -0.5);
  cplx sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const cplx e_plus = half_turns(4 * j + n + 1, 2 * n);
    const cplx e_minus = half_turns(4 * j + n - 1, 2 * n);
    sum += dilog_indexed(a * (1.0 - e_plus), "t_at_n", j) + dilog_indexed(b * (1.0 + e_minus), "t_at_n", j) -
           dilog_indexed(b * (1.0 + e_plus), "t_at_n", j) - dilog_indexed(a * (1.0 - e_minus), "t_at_n", j);
  }
  return 0.25 * sum;
}

cplx t_inv_n(int n) {
  require_positive(n, "t_inv_n");
  return pi2 / 16 - t_at_n(n);
}

cplx conn_u1_vm1(cplx x, const QuadratureConfig& cfg) {
  require_right_half(x, "conn_u1_vm1");
  return hzn_integral({x, 1.0, -1.0}, cfg) - herglotz_eval(0.5 * x, cfg) + herglotz_eval(x, cfg) - pi2 / (6.0 * x);
}

ConnLimitReport conn_limits(cplx x, std::span<const double> eps, const QuadratureConfig& cfg) {
  require_right_half(x, "conn_limits");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < 1.0) || (i > 0 && !(eps[i] < eps[i - 1]))) {
      throw DomainError("conn_limits: eps must be a decreasing sequence in (0, 1)");
    }
  }
  const cplx f_x = herglotz_eval(x, cfg);
  const cplx f_side3 = herglotz_eval(2.0 * x, cfg) - f_x - 0.5 * log2 * plog(2.0 * x * x) - pi2 / (12.0 * x);
  const double v_inner = 1.0 - kInnerLimitGap;

  std::vector<double> res1;
  std::vector<double> res3;
  for (double e : eps) {
    const double u = 1.0 - e;
    const double log_e = std::log(e);
    const cplx lhs1 = hzn_integral({x, u, v_inner}, cfg) - dilog(u) / x +
                      log_e * (std::log(kInnerLimitGap) + euler_gamma + plog(x)) + lis_prime_at1(u);
    res1.push_back(std::abs(lhs1 - f_x));
    const cplx lhs3 = hzn_integral({x, -1.0, 1.0 - e}, cfg) + log2 * log_e;
    res3.push_back(std::abs(lhs3 - f_side3));
  }
  return {make_ladder(eps, std::move(res1)), make_ladder(eps, std::move(res3))};
}

cplx jxfx_residual(cplx x, const QuadratureConfig& cfg) {
  require_right_half(x, "jxfx_residual");
  return j_integral(x, cfg) - herglotz_eval(2.0 * x, cfg) + 2.0 * herglotz_eval(x, cfg) -
         herglotz_eval(0.5 * x, cfg) - pi2 / (12.0 * x);
}

ThreeTermResiduals j_three_term_residuals(cplx x, const QuadratureConfig& cfg) {
  if (!(x.real() > 1.0)) throw DomainError("j_three_term_residuals: requires Re x > 1");
  const double c = herglotz_constant();
  auto F = [&](cplx z) { return herglotz_eval(z, cfg); };
  const cplx xm1 = x - 1.0;
  const cplx li_inv = dilog(1.0 / x);
  const cplx li_ratio = dilog(xm1 / x);
  const cplx logs = frak_sum_logs(x);

  const cplx j_x = j_integral(x, cfg);
  const cplx lhs = j_x - j_integral(xm1, cfg) + j_integral(x / xm1, cfg);

  ThreeTermResiduals out;
  out.r1 = j_x - (F(x) - F(0.5 * xm1) + F(xm1 / (2.0 * x)) + pi2 * (2.0 * x + 1.0) / (12.0 * x) +
                  0.5 * euler_gamma * euler_gamma + constants::stieltjes_gamma1 + 0.5 * log2 * log2 + li_inv);
  out.r2 = lhs - (F(0.5 * x) + F(xm1 / x) - F(0.5 * xm1) + 2.0 * li_inv + li_ratio -
                  pi2 * (x * x + 1.0) / (12.0 * x * xm1) + (c - pi2 / 12) + logs);
  out.r3 = lhs - (hzn_integral({x, 1.0, -1.0}, cfg) - hzn_integral({xm1, 1.0, -1.0}, cfg) + li_inv + li_ratio -
                  pi2 * (2.0 * x + 1.0) / (12.0 * x) + logs);
  return out;
}

std::string fn_tag_name(FnTag tag) {
  switch (tag) {
    case FnTag::J: return "J";
    case FnTag::T: return "T";
    case FnTag::calJ: return "calJ";
    case FnTag::calT: return "calT";
  }
  return "?";
}

}  // namespace hzn
