#pragma once

// Integer matrices acting on points [x, (u, v)] by
//   [[a, b], [c, d]] o [x, (u, v)] = [(a x + b)/(c x + d), (u^a v^b, u^c v^d)],
// and the induced right action f | g on functions of such points.

#include <array>
#include <functional>

#include "hzn/hzn.hpp"

namespace hzn {

struct IntMatrix2 {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  friend IntMatrix2 operator*(const IntMatrix2& m, const IntMatrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

namespace generators {
inline constexpr IntMatrix2 I{1, 0, 0, 1};
inline constexpr IntMatrix2 S{0, -1, 1, 0};
inline constexpr IntMatrix2 U{1, -1, 1, 0};
inline constexpr IntMatrix2 T{1, 1, 0, 1};
inline constexpr IntMatrix2 Tprime{1, 0, 1, 1};
}  // namespace generators

// z^k for integer k by repeated squaring; no branch choice is involved.
cplx int_pow(cplx z, long k);

// Throws DomainError if c x + d = 0 or if u or v is zero.
HznPoint act_point(const IntMatrix2& g, const HznPoint& p);

using PointFunction = std::function<cplx(const HznPoint&)>;

// (f | g)(p) = f(g o p).
PointFunction slash(PointFunction f, const IntMatrix2& g);

// A point written symbolically over a base point [x, (u, v)]: x enters through
// a Moebius matrix and each slot is a monomial u^i v^j. Equality is exact.
struct MonomialPoint {
  IntMatrix2 moebius = generators::I;
  std::array<long, 2> u_slot{1, 0};
  std::array<long, 2> v_slot{0, 1};

  friend bool operator==(const MonomialPoint&, const MonomialPoint&) = default;
};

MonomialPoint act_monomial(const IntMatrix2& g, const MonomialPoint& p);
HznPoint realize(const MonomialPoint& m, const HznPoint& base);

}  // namespace hzn
