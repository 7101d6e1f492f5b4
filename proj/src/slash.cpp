#include "hzn/slash.hpp"

#include <utility>

#include "hzn/error.hpp"

namespace hzn {

cplx int_pow(cplx z, long k) {
  if (k < 0) {
    if (z == cplx(0.0, 0.0)) throw DomainError("int_pow: zero to a negative power");
    return 1.0 / int_pow(z, -k);
  }
  cplx out = 1.0;
  cplx base = z;
  while (k > 0) {
    if (k & 1) out *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return out;
}

HznPoint act_point(const IntMatrix2& g, const HznPoint& p) {
  const cplx den = static_cast<double>(g.c) * p.x + static_cast<double>(g.d);
  if (den == cplx(0.0, 0.0)) throw DomainError("act_point: c x + d = 0");
  if (p.u == cplx(0.0, 0.0) || p.v == cplx(0.0, 0.0)) throw DomainError("act_point: u and v must be nonzero");
  const cplx num = static_cast<double>(g.a) * p.x + static_cast<double>(g.b);
  return {num / den, int_pow(p.u, g.a) * int_pow(p.v, g.b), int_pow(p.u, g.c) * int_pow(p.v, g.d)};
}

PointFunction slash(PointFunction f, const IntMatrix2& g) {
  return [f = std::move(f), g](const HznPoint& p) { return f(act_point(g, p)); };
}

MonomialPoint act_monomial(const IntMatrix2& g, const MonomialPoint& p) {
  // Slot exponents transform like the pair (u, v) itself.
  auto mix = [](long e, long f, const std::array<long, 2>& su, const std::array<long, 2>& sv) {
    return std::array<long, 2>{e * su[0] + f * sv[0], e * su[1] + f * sv[1]};
  };
  return {g * p.moebius, mix(g.a, g.b, p.u_slot, p.v_slot), mix(g.c, g.d, p.u_slot, p.v_slot)};
}

HznPoint realize(const MonomialPoint& m, const HznPoint& base) {
  const HznPoint x_only = act_point(m.moebius, {base.x, 1.0, 1.0});
  return {x_only.x, int_pow(base.u, m.u_slot[0]) * int_pow(base.v, m.u_slot[1]),
          int_pow(base.u, m.v_slot[0]) * int_pow(base.v, m.v_slot[1])};
}

}  // namespace hzn
