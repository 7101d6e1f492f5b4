#pragma once

// Complex elementary and special functions shared by every formula in the
// library. All functions use the principal branch, arg in (-pi, pi].

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace hzn {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

namespace constants {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double zeta2 = 1.64493406684822643647241516664602519;  // pi^2/6
inline constexpr double log2 = 0.693147180559945309417232121458176568;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;
// First Stieltjes constant, gamma_1.
inline constexpr double stieltjes_gamma1 = -0.0728158454836767248605863758749547045;

// B_2, B_4, ..., B_40.
inline constexpr int kBernoulliCount = 20;
inline constexpr std::array<double, kBernoulliCount> bernoulli_even = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

// zeta(3), zeta(5), ..., zeta(11).
inline constexpr std::array<double, 5> zeta_odd = {
    1.20205690315959428539973816151144999,
    1.03692775514336992633136548645703417,
    1.00834927738192282683979754984979676,
    1.00200839282608221441785276923241206,
    1.00049418860411946455870228252646994,
};

}  // namespace constants

// Principal logarithm. Throws DomainError at z = 0. The imaginary part of
// the result is +pi on the whole negative real axis regardless of the sign
// of a zero imaginary part.
cplx plog(cplx z);

// exp(plog(z) / n). Throws DomainError at z = 0 or n < 1.
cplx proot(cplx z, int n);

// exp(2 pi i j / n) for j = 1..n. Quarter-turn values are exact.
std::vector<cplx> roots_of_unity(int n);

// Li_2(z), analytic on C \ [1, inf). Throws CutError for real z > 1.
cplx dilog(cplx z);

// psi(z) = Gamma'(z)/Gamma(z). Throws DomainError at the poles 0, -1, -2, ...
cplx digamma(cplx z);

// psi(z) - log(z), evaluated without cancellation for large |z| in the
// right half-plane.
cplx digamma_minus_log(cplx z);

// d/ds Li_s(u) at s = 1, i.e. -sum_{n>=2} u^n log(n)/n. Requires |u| < 1.
cplx lis_prime_at1(cplx u);

// First Stieltjes constant.
double stieltjes_gamma1();

// Hurwitz zeta sum_{k>=0} (k + a)^{-s} for integer s >= 2 and real a > 0.
double hurwitz_zeta(int s, double a);

// log(1 + z) accurate for small |z|.
cplx clog1p(cplx z);

// exp(z) - 1 accurate for small |z|.
cplx cexpm1(cplx z);

}  // namespace hzn
