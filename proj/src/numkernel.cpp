#include "hzn/numkernel.hpp"

#include <cmath>
#include <limits>

#include "hzn/error.hpp"

namespace hzn {

namespace {

using constants::pi;
using constants::zeta2;

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// B_{2k} / (2k+1)!, k = 1..20.
constexpr std::array<double, 20> kDilogCoeff = {
    2.777777777777777777778e-2,   -2.777777777777777777778e-4,  4.724111866969009826153e-6,
    -9.185773074661963550852e-8,  1.897886998897099907201e-9,   -4.064761645144225526806e-11,
    8.921691020456452555218e-13,  -1.993929586072107568724e-14, 4.518980029619918191650e-16,
    -1.035651761218124701448e-17, 2.395218621026186745740e-19,  -5.581785874325009336283e-21,
    1.309150755418321285812e-22,  -3.087419802426740293242e-24, 7.315975652702203420358e-26,
    -1.740845657234000740989e-27, 4.157635644613899719618e-29,  -9.962148488284622103194e-31,
    2.394034424896165300521e-32,  -5.768347355367390084292e-34,
};

// Li_2(z) = sum_n B_n w^{n+1}/(n+1)! with w = -log(1 - z); converges for
// |w| < 2 pi. Callers keep |w| <= 1.5.
cplx dilog_bernoulli(cplx z) {
  const cplx w = -clog1p(-z);
  const cplx w2 = w * w;
  cplx sum = 0.0;
  cplx p = w * w2;
  for (double c : kDilogCoeff) {
    const cplx term = c * p;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    p *= w2;
  }
  return w - 0.25 * w2 + sum;
}

// |z| <= 1, z != 1.
cplx dilog_unit_disk(cplx z) {
  if (z.real() > 0.5) {
    const cplx omz = 1.0 - z;
    return zeta2 - plog(z) * plog(omz) - dilog_bernoulli(omz);
  }
  return dilog_bernoulli(z);
}

// pi * cot(pi z), reduced so that large real parts keep full precision.
cplx pi_cot_pi(cplx z) {
  const double a = pi * (z.real() - std::nearbyint(z.real()));
  const double b = pi * z.imag();
  if (std::abs(b) > 20.0) return cplx(0.0, b > 0 ? -pi : pi);
  const double den = std::cosh(2.0 * b) - std::cos(2.0 * a);
  return pi * cplx(std::sin(2.0 * a) / den, -std::sinh(2.0 * b) / den);
}

// -1/(2z) - sum_{k=1}^{8} B_{2k} / (2k z^{2k}); asymptotic part of psi(z) - log z.
cplx digamma_asymptotic_tail(cplx z) {
  const cplx zinv2 = 1.0 / (z * z);
  cplx p = zinv2;
  cplx sum = -0.5 / z;
  for (int k = 1; k <= 8; ++k) {
    sum -= constants::bernoulli_even[k - 1] / (2.0 * k) * p;
    p *= zinv2;
  }
  return sum;
}

}  // namespace

cplx plog(cplx z) {
  if (!is_finite(z)) throw DomainError("plog: non-finite argument");
  if (z == cplx(0.0, 0.0)) throw DomainError("plog: logarithm of zero");
  cplx r = std::log(z);
  if (z.imag() == 0.0 && z.real() < 0.0) r.imag(pi);
  return r;
}

cplx proot(cplx z, int n) {
  if (n < 1) throw DomainError("proot: root order must be positive");
  if (z == cplx(0.0, 0.0)) throw DomainError("proot: root of zero");
  if (n == 1) return z;
  if (n == 2) {
    if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
    return std::sqrt(z);
  }
  return std::exp(plog(z) / static_cast<double>(n));
}

std::vector<cplx> roots_of_unity(int n) {
  if (n < 1) throw DomainError("roots_of_unity: n must be positive");
  static constexpr std::array<cplx, 4> kQuarter = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const long long four_j = 4LL * j;
    if (four_j % n == 0) {
      out.push_back(kQuarter[static_cast<std::size_t>((four_j / n) % 4)]);
      continue;
    }
    const int folded = (2 * j <= n) ? j : j - n;
    const double angle = 2.0 * pi * folded / n;
    out.emplace_back(std::cos(angle), std::sin(angle));
  }
  return out;
}

cplx dilog(cplx z) {
  if (!is_finite(z)) throw DomainError("dilog: non-finite argument");
  if (z.imag() == 0.0 && z.real() > 1.0) {
    throw CutError("dilog: argument " + std::to_string(z.real()) + " lies on the cut (1, inf)");
  }
  if (z == cplx(0.0, 0.0)) return 0.0;
  if (z == cplx(1.0, 0.0)) return zeta2;
  if (std::norm(z) > 1.0) {
    const cplx l = plog(-z);
    return -dilog_unit_disk(1.0 / z) - zeta2 - 0.5 * l * l;
  }
  return dilog_unit_disk(z);
}

cplx digamma(cplx z) {
  if (!is_finite(z)) throw DomainError("digamma: non-finite argument");
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("digamma: pole at non-positive integer");
  }
  if (z.real() < 0.5) return digamma(1.0 - z) - pi_cot_pi(z);
  cplx acc = 0.0;
  while (std::abs(z) < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  return acc + plog(z) + digamma_asymptotic_tail(z);
}

cplx digamma_minus_log(cplx z) {
  if (z.real() > 0.0 && std::abs(z) >= 10.0) return digamma_asymptotic_tail(z);
  return digamma(z) - plog(z);
}

cplx lis_prime_at1(cplx u) {
  const double r = std::abs(u);
  if (!(r < 1.0)) throw DomainError("lis_prime_at1: requires |u| < 1");
  if (r == 0.0) return 0.0;
  cplx sum = 0.0;
  cplx p = u * u;
  double pr = r * r;
  for (long n = 2;; ++n) {
    sum -= p * (std::log(static_cast<double>(n)) / n);
    p *= u;
    pr *= r;
    const double next = static_cast<double>(n + 1);
    // log(k)/k decreases for k >= 3, so the geometric tail bounds the rest.
    const double tail = std::log(next) / next * pr / (1.0 - r);
    if (n >= 3 && tail <= 0x1p-56 * std::max(1.0, std::abs(sum))) break;
    if (pr == 0.0) break;
  }
  return sum;
}

double stieltjes_gamma1() { return constants::stieltjes_gamma1; }

double hurwitz_zeta(int s, double a) {
  if (s < 2) throw DomainError("hurwitz_zeta: requires integer s >= 2");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: requires a > 0");
  double sum = 0.0;
  while (a < 20.0) {
    sum += std::pow(a, -s);
    a += 1.0;
  }
  // Euler-Maclaurin from a.
  sum += std::pow(a, 1 - s) / (s - 1) + 0.5 * std::pow(a, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double apow = std::pow(a, -s - 1);
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 12; ++j) {
    const double term = constants::bernoulli_even[j - 1] / fact * rising * apow;
    sum += term;
    if (std::abs(term) < 1e-18 * sum) break;
    rising *= (s + 2.0 * j - 1) * (s + 2.0 * j);
    apow /= a * a;
    fact *= (2.0 * j + 1) * (2.0 * j + 2);
  }
  return sum;
}

cplx clog1p(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  if (std::abs(x) < 0.5 && std::abs(y) < 0.5) {
    return {0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x)};
  }
  return plog(1.0 + z);
}

cplx cexpm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace hzn
