#include "hzn/identities.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <set>
#include <utility>

#include "hzn/classic.hpp"
#include "hzn/error.hpp"

namespace hzn {

namespace {

using constants::log2;
using constants::pi;

constexpr double pi2 = pi * pi;
// Samplers keep this distance from excluded sets.
constexpr double kClearance = 1e-3;
constexpr int kMaxDraws = 10'000;
constexpr std::array<int, 4> kCorollaryN{1, 2, 3, 5};
constexpr std::array<std::array<int, 2>, 6> kRationalPQ{{{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {5, 3}}};
const std::array<double, 3> kLimitLadder{1e-1, 1e-2, 1e-3};

cplx F3(cplx x, cplx u, cplx v) { return hzn_eval({x, u, v}); }
cplx sq(cplx z) { return z * z; }

bool clear_of(cplx z, cplx w) { return std::abs(z - w) >= kClearance; }

// Distance from z to the real ray [from, inf).
bool clear_of_ray(cplx z, double from) {
  return std::hypot(std::max(0.0, from - z.real()), z.imag()) >= kClearance;
}

bool dilog_args_clear(std::initializer_list<cplx> args) {
  return std::all_of(args.begin(), args.end(), [](cplx z) { return clear_of_ray(z, 1.0); });
}

cplx right_box(SampleRng& r) { return {r.uniform(0.2, 3.0), r.uniform(-2.0, 2.0)}; }

// |x| log-uniform on [0.1, 10], |arg x| <= 1.2.
cplx right_polar(SampleRng& r) {
  return std::polar(std::exp(r.uniform(std::log(0.1), std::log(10.0))), r.uniform(-1.2, 1.2));
}

cplx on_circle(SampleRng& r) { return std::polar(1.0, r.uniform(-pi, pi)); }

cplx in_disk(SampleRng& r, double radius) { return std::polar(radius * std::sqrt(r.uniform()), r.uniform(-pi, pi)); }

// Closed unit disk with a quarter of the draws on the boundary circle.
cplx closed_disk(SampleRng& r) { return r.uniform() < 0.25 ? on_circle(r) : in_disk(r, 1.0); }

std::optional<Sample> disk_pair(SampleRng& r) {
  Sample s{right_box(r), closed_disk(r), closed_disk(r)};
  if (std::abs(s.u) < kClearance || std::abs(s.v) < kClearance) return std::nullopt;
  if (!clear_of(s.u, 1.0) || !clear_of(s.v, 1.0)) return std::nullopt;
  return s;
}

std::optional<Sample> x_only(cplx x) { return Sample{x}; }

// sum_{j=1}^n log^2(1 - w^{e/n} e^{2 pi i j/n}) for e = +-1.
cplx log_sq_root_sum(int n, cplx w, bool inverse_root) {
  cplx root = proot(w, n);
  if (inverse_root) root = 1.0 / root;
  cplx sum = 0.0;
  for (cplx e : roots_of_unity(n)) sum += sq(plog(1.0 - root * e));
  return sum;
}

cplx f_inv_n(int n, cplx v) { return hzn_integral({1.0 / n, 1.0, v}); }

cplx three_term_rhs(cplx x, cplx u, cplx v) {
  const cplx uv = u * v;
  const cplx r = std::sqrt(uv);
  cplx out = plog(1.0 - u) * plog(1.0 - uv) + dilog(u) - dilog(v / (v - 1.0)) + 2.0 * dilog(u / (u - 1.0)) -
             dilog((u - v) / (1.0 - v)) - (1.0 / (x + 1.0) - 0.5) * dilog(uv);
  for (double s : {-1.0, 1.0}) out -= dilog((u + s * r) / (u - 1.0)) - dilog((v + s * r) / (v - 1.0));
  return out;
}

bool three_term_clear(cplx u, cplx v) {
  const cplx uv = u * v;
  const cplx r = std::sqrt(uv);
  return dilog_args_clear({u, v / (v - 1.0), u / (u - 1.0), (u - v) / (1.0 - v), uv, (u + r) / (u - 1.0),
                           (u - r) / (u - 1.0), (v + r) / (v - 1.0), (v - r) / (v - 1.0)});
}

cplx six_term_rhs(cplx x, cplx u, cplx v) {
  const cplx uv = u * v;
  const cplx r = std::sqrt(uv);
  const cplx ru = std::sqrt(u / v);
  const cplx rv = std::sqrt(v / u);
  cplx out = plog(1.0 - u) * plog(1.0 - uv) + plog(1.0 - 1.0 / u) * plog(1.0 - 1.0 / uv) +
             2.0 * plog(u / (u - 1.0)) * plog(1.0 - u) - 0.5 * sq(plog(-u)) - plog(v / (v - 1.0)) * plog(1.0 - v) +
             (1.0 / (x + 1.0) - 0.5) * (0.5 * sq(plog(-uv)) + pi2 / 6) - dilog((u - v) / (1.0 - v)) -
             dilog((u - v) / (u * (1.0 - v)));
  for (double s : {-1.0, 1.0}) {
    out -= dilog((u + s * r) / (u - 1.0)) - dilog((v + s * r) / (v - 1.0)) + dilog((1.0 + s * ru) / (1.0 - u)) -
           dilog((1.0 + s * rv) / (1.0 - v));
  }
  return out;
}

bool six_term_clear(cplx u, cplx v) {
  const cplx uv = u * v;
  const cplx r = std::sqrt(uv);
  const cplx ru = std::sqrt(u / v);
  const cplx rv = std::sqrt(v / u);
  return dilog_args_clear({(u - v) / (1.0 - v), (u - v) / (u * (1.0 - v)), (u + r) / (u - 1.0), (u - r) / (u - 1.0),
                           (v + r) / (v - 1.0), (v - r) / (v - 1.0), (1.0 + ru) / (1.0 - u), (1.0 - ru) / (1.0 - u),
                           (1.0 + rv) / (1.0 - v), (1.0 - rv) / (1.0 - v)});
}

template <std::size_t N>
cplx signed_sum(const std::array<SignedArgument, N>& args, const HznPoint& base) {
  cplx out = 0.0;
  for (const auto& a : args) out += static_cast<double>(a.sign) * hzn_eval(realize(a.point, base));
  return out;
}

// Three-term J relations: x with Re x > 1.
std::optional<Sample> j_three_term_sampler(SampleRng& r) { return x_only({r.uniform(1.2, 5.0), r.uniform(-2.0, 2.0)}); }

// x in C' away from the negative axis and from 0 and -1.
std::optional<Sample> cprime_sampler(SampleRng& r) {
  const cplx x(r.uniform(-2.0, 3.0), r.uniform(-2.0, 2.0));
  if (std::abs(x) < 0.1 || std::abs(x + 1.0) < 0.1) return std::nullopt;
  if (x.real() <= 0.0 && std::abs(x.imag()) < 0.1) return std::nullopt;
  return Sample{x};
}

std::optional<Sample> limit_sampler(SampleRng& r) { return x_only({r.uniform(0.3, 2.5), r.uniform(-1.5, 1.5)}); }

Evaluation limit_evaluation(const LimitLadder& ladder) {
  Evaluation e;
  e.lhs = ladder.residual.back();
  e.rhs = 0.0;
  e.decay = *std::min_element(ladder.decay_per_decade.begin(), ladder.decay_per_decade.end());
  e.monotone = ladder.monotone;
  return e;
}

Evaluation residual_only(cplx r) { return {r, 0.0}; }

const std::array<IntMatrix2, 3> kSlashGenerators{generators::S, generators::T, generators::U};

cplx slash_target(const HznPoint& p) {
  static const QuadratureConfig tight{1e-14, 5, 13};
  return hzn_integral(p, tight);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::array<SignedArgument, 3> three_term_arguments() {
  return {{{1, {generators::I, {1, 0}, {0, 1}}},
           {-1, {generators::T, {1, 1}, {0, 1}}},
           {-1, {generators::Tprime, {1, 0}, {1, 1}}}}};
}

std::array<SignedArgument, 6> six_term_arguments() {
  return {{{1, {generators::I, {1, 0}, {0, 1}}},
           {1, {generators::I, {-1, 0}, {0, -1}}},
           {-1, {generators::T, {1, 1}, {0, 1}}},
           {-1, {generators::T, {-1, -1}, {0, -1}}},
           {-1, {generators::Tprime, {1, 0}, {1, 1}}},
           {-1, {generators::Tprime, {-1, 0}, {-1, -1}}}}};
}

std::vector<Identity> register_builtin() {
  std::vector<Identity> reg;
  const std::vector<std::string> xuv{"x", "u", "v"};
  const std::vector<std::string> xs{"x"};
  const std::vector<std::string> ns{"n"};
  const std::vector<std::string> nv{"n", "v"};
  const std::vector<std::string> ms{"m"};

  reg.push_back({
      .id = "two_term_fe",
      .name = "two-term functional equation",
      .anchor = "For u,v in D': F(x;u,v) + F(1/x;v,u) = -log(1-u) log(1-v)",
      .params = xuv,
      .sampler = disk_pair,
      .evaluate =
          [](const Sample& s) {
            return Evaluation{F3(s.x, s.u, s.v) + F3(1.0 / s.x, s.v, s.u), -plog(1.0 - s.u) * plog(1.0 - s.v)};
          },
      .corners = {{1.0, -1.0, -1.0}, {2.0, kI, -kI}, {cplx(0.5, 1.0), -0.5, kI}},
  });

  reg.push_back({
      .id = "frak_antisymmetry",
      .name = "antisymmetry of the symmetrized function",
      .anchor = "With frakF(x;u,v) = F(x;u,v) + log(1-u)log(1-v)/2: frakF(x;u,v) + frakF(1/x;v,u) = 0",
      .params = xuv,
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        auto s = disk_pair(r);
        if (s && (s->u == cplx(1.0) || s->v == cplx(1.0))) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            return Evaluation{frak_f({s.x, s.u, s.v}) + frak_f({1.0 / s.x, s.v, s.u}), 0.0};
          },
      .corners = {{1.0, 0.5, 0.5}, {3.0, -1.0, kI}},
  });

  reg.push_back({
      .id = "three_term_fe",
      .name = "three-term functional equation, expanded constants",
      .anchor = "For u,v,uv in D': F(x;u,v) - F(x+1;uv,v) - F(x/(x+1);u,uv) = log(1-u)log(1-uv) + Li2(u) - "
                "Li2(v/(v-1)) + 2Li2(u/(u-1)) - Li2((u-v)/(1-v)) - (1/(x+1) - 1/2)Li2(uv) - sum_j {...}",
      .params = xuv,
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        auto s = disk_pair(r);
        if (!s || !clear_of(s->u * s->v, 1.0) || !three_term_clear(s->u, s->v)) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            return Evaluation{signed_sum(three_term_arguments(), {s.x, s.u, s.v}), three_term_rhs(s.x, s.u, s.v)};
          },
      .corners = {{1.0, 0.5, 0.5}, {1.0, -1.0, 0.5}},
      .default_tol = 1e-8,
  });

  reg.push_back({
      .id = "six_term_fe",
      .name = "six-term functional equation on the unit circle",
      .anchor = "For u,v in D1': F(x;u,v) + F(x;1/u,1/v) - F(x+1;uv,v) - F(x+1;1/(uv),1/v) - F(x/(x+1);u,uv) - "
                "F(x/(x+1);1/u,1/(uv)) = log(1-u)log(1-uv) + ... - sum_j {...}",
      .params = xuv,
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        Sample s{right_box(r), on_circle(r), on_circle(r)};
        if (!clear_of(s.u, 1.0) || !clear_of(s.v, 1.0) || !clear_of(s.u * s.v, 1.0)) return std::nullopt;
        if (!six_term_clear(s.u, s.v)) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            return Evaluation{signed_sum(six_term_arguments(), {s.x, s.u, s.v}), six_term_rhs(s.x, s.u, s.v)};
          },
      .corners = {{1.0, kI, -1.0}, {2.0, -kI, -1.0}},
      .default_tol = 1e-8,
  });

  reg.push_back({
      .id = "general_fe",
      .name = "three-term functional equation with numerical constants",
      .anchor = "For u off (1,inf), v off [1,inf): F(x;u,v) - F(x+1;uv,v) - F(x/(x+1);u,uv) = (1/2 - 1/(x+1))Li2(uv) "
                "- F(2;uv,v) + F(1;u,v) - F(1/2;u,uv)",
      .params = xuv,
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        Sample s{right_box(r), in_disk(r, 1.6), in_disk(r, 1.6)};
        const cplx uv = s.u * s.v;
        if (std::abs(s.u) < kClearance || std::abs(s.v) < kClearance) return std::nullopt;
        if (!clear_of_ray(s.u, 1.0) || !clear_of_ray(s.v, 1.0) || !clear_of_ray(uv, 1.0)) return std::nullopt;
        const HznPoint pts[] = {{s.x, s.u, s.v},   {s.x + 1.0, uv, s.v}, {s.x / (s.x + 1.0), s.u, uv},
                                {2.0, uv, s.v}, {1.0, s.u, s.v},      {0.5, s.u, uv}};
        for (const auto& p : pts) {
          if (!integral_curve_safe(p)) return std::nullopt;
        }
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            const cplx uv = s.u * s.v;
            return Evaluation{F3(s.x, s.u, s.v) - F3(s.x + 1.0, uv, s.v) - F3(s.x / (s.x + 1.0), s.u, uv),
                              (0.5 - 1.0 / (s.x + 1.0)) * dilog(uv) - F3(2.0, uv, s.v) + F3(1.0, s.u, s.v) -
                                  F3(0.5, s.u, uv)};
          },
      .corners = {{1.0, -3.0, 0.3}, {1.5, 0.5, -0.5}},
  });

  auto duplication_sampler = [](SampleRng& r) -> std::optional<Sample> {
    Sample s{right_box(r), closed_disk(r), closed_disk(r)};
    if (std::abs(s.u) < kClearance || std::abs(s.v) < kClearance) return std::nullopt;
    if (!clear_of(s.v, 1.0) || !clear_of(s.v, -1.0)) return std::nullopt;
    return s;
  };
  reg.push_back({
      .id = "duplication_u",
      .name = "duplication in u",
      .anchor = "For u in D, v, v^2 in D', Re x > 0: F(2x;u^2,v) = F(x;u,v) + F(x;-u,v)",
      .params = xuv,
      .sampler = duplication_sampler,
      .evaluate =
          [](const Sample& s) {
            return Evaluation{F3(2.0 * s.x, s.u * s.u, s.v), F3(s.x, s.u, s.v) + F3(s.x, -s.u, s.v)};
          },
      .corners = {{1.0, 1.0, kI}, {0.5, -1.0, 0.5}},
  });
  reg.push_back({
      .id = "duplication_v",
      .name = "duplication in v",
      .anchor = "For u in D, v, v^2 in D', Re x > 0: F(x/2;u,v^2) = F(x;u,v) + F(x;u,-v)",
      .params = xuv,
      .sampler = duplication_sampler,
      .evaluate =
          [](const Sample& s) {
            return Evaluation{F3(0.5 * s.x, s.u, s.v * s.v), F3(s.x, s.u, s.v) + F3(s.x, s.u, -s.v)};
          },
      .corners = {{1.0, 1.0, kI}, {2.0, -1.0, 0.5}},
  });

  reg.push_back({
      .id = "series_integral",
      .name = "double series continuation agrees with the integral",
      .anchor = "For |u|,|v| < 1: F(x;u,v) = -sum_{m,n>=1} u^m v^n / (m (m x + n))",
      .params = xuv,
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        Sample s{right_box(r), in_disk(r, 0.9), in_disk(r, 0.9)};
        if (std::abs(s.u) < kClearance || std::abs(s.v) < kClearance) return std::nullopt;
        return s;
      },
      .evaluate = [](const Sample& s) { return Evaluation{hzn_series({s.x, s.u, s.v}), hzn_integral({s.x, s.u, s.v})}; },
      .corners = {{1.0, 0.5, 0.5}},
  });

  reg.push_back({
      .id = "rational_value",
      .name = "closed form at rational x",
      .anchor = "For (u,v) in D x D': F(p/q;u,v) = (q/p)Li2(u) + sum_{alpha^p=1} sum_{beta^q=1} {Li2(beta v^(1/q)/(beta "
                "v^(1/q)-1)) - Li2((alpha u^(1/p) - beta v^(1/q))/(1 - beta v^(1/q)))}",
      .params = {"n", "m", "u", "v"},
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        const auto pq = kRationalPQ[static_cast<std::size_t>(r.integer(0, 5))];
        Sample s{0.0, closed_disk(r), closed_disk(r), pq[0], pq[1]};
        if (std::abs(s.u) < kClearance || std::abs(s.v) < kClearance || !clear_of(s.v, 1.0)) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            return Evaluation{hzn_rational(s.n, s.m, s.u, s.v),
                              hzn_integral({static_cast<double>(s.n) / s.m, s.u, s.v})};
          },
      .corners = {{0.0, 1.0, -1.0, 1, 1}, {0.0, -1.0, -1.0, 2, 1}, {0.0, 1.0, -1.0, 1, 2}},
  });

  auto corollary_sampler = [](auto region) {
    return [region](SampleRng& r) -> std::optional<Sample> {
      Sample s{0.0, 1.0, closed_disk(r), kCorollaryN[static_cast<std::size_t>(r.integer(0, 3))]};
      if (std::abs(s.v) < kClearance || !clear_of(s.v, 1.0) || !region(s.v)) return std::nullopt;
      return s;
    };
  };
  auto any_v = [](cplx) { return true; };
  auto strip_v = [](cplx v) { return v.real() > kClearance && v.real() < 1.0 - kClearance; };
  auto left_v = [](cplx v) { return v.real() < -kClearance; };
  // 1 - v must also stay off the cut [1, inf), which excludes the negative axis.
  auto left_v_off_axis = [](cplx v) { return v.real() < -kClearance && clear_of_ray(1.0 - v, 1.0); };

  reg.push_back({
      .id = "corollary_1",
      .name = "F(1/n;1,v) + F(1/n;1,v/(v-1)) in logarithms",
      .anchor = "For v in D': F(1/n;1,v) + F(1/n;1,v/(v-1)) = log^2(1-v)/(2n) - (1/2) sum_j (log^2(1 - v^(1/n) e_j) + "
                "log^2(1 - (v/(v-1))^(1/n) e_j))",
      .params = nv,
      .sampler = corollary_sampler(any_v),
      .evaluate =
          [](const Sample& s) {
            const int n = s.n;
            const cplx w = s.v / (s.v - 1.0);
            return Evaluation{f_inv_n(n, s.v) + f_inv_n(n, w),
                              sq(plog(1.0 - s.v)) / (2.0 * n) -
                                  0.5 * (log_sq_root_sum(n, s.v, false) + log_sq_root_sum(n, w, false))};
          },
      .corners = {{0.0, 1.0, -1.0, 1}, {0.0, 1.0, 0.5, 3}},
  });
  reg.push_back({
      .id = "corollary_2a",
      .name = "F(1/n;1,v) + F(1/n;1,1-v) in logarithms",
      .anchor = "Let 0 < Re(v) < 1: F(1/n;1,v) + F(1/n;1,1-v) = log(1-v)log(v)/n - pi^2/(6n) - (1/2) sum_j (log^2(1 - "
                "v^(1/n) e_j) + log^2(1 - (1-v)^(1/n) e_j))",
      .params = nv,
      .sampler = corollary_sampler(strip_v),
      .evaluate =
          [](const Sample& s) {
            const int n = s.n;
            return Evaluation{f_inv_n(n, s.v) + f_inv_n(n, 1.0 - s.v),
                              plog(1.0 - s.v) * plog(s.v) / static_cast<double>(n) - pi2 / (6.0 * n) -
                                  0.5 * (log_sq_root_sum(n, s.v, false) + log_sq_root_sum(n, 1.0 - s.v, false))};
          },
      .corners = {{0.0, 1.0, 0.5, 1}, {0.0, 1.0, cplx(0.5, 0.5), 2}},
  });
  reg.push_back({
      .id = "corollary_2b",
      .name = "F(1/n;1,v/(v-1)) - F(1/n;1,1-v) in logarithms",
      .anchor = "Let 0 < Re(v) < 1: F(1/n;1,v/(v-1)) - F(1/n;1,1-v) = pi^2/(6n) + log^2(1-v)/(2n) - log(1-v)log(v)/n + "
                "(1/2) sum_j (log^2(1 - (1-v)^(1/n) e_j) - log^2(1 - (v/(v-1))^(1/n) e_j))",
      .params = nv,
      .sampler = corollary_sampler(strip_v),
      .evaluate =
          [](const Sample& s) {
            const int n = s.n;
            const cplx w = s.v / (s.v - 1.0);
            const cplx l1 = plog(1.0 - s.v);
            return Evaluation{f_inv_n(n, w) - f_inv_n(n, 1.0 - s.v),
                              pi2 / (6.0 * n) + l1 * l1 / (2.0 * n) - l1 * plog(s.v) / static_cast<double>(n) +
                                  0.5 * (log_sq_root_sum(n, 1.0 - s.v, false) - log_sq_root_sum(n, w, false))};
          },
      .corners = {{0.0, 1.0, 0.5, 1}, {0.0, 1.0, cplx(0.3, -0.6), 5}},
  });
  reg.push_back({
      .id = "corollary_3a",
      .name = "F(1/n;1,v) - F(1/n;1,1/(1-v)) in logarithms",
      .anchor = "For Re(v) < 0: F(1/n;1,v) - F(1/n;1,1/(1-v)) = pi^2/(6n) - log(1-v)log((1-v)/v^2)/(2n) - (1/2) sum_j "
                "(log^2(1 - v^(1/n) e_j) - log^2(1 - (1-v)^(-1/n) e_j))",
      .params = nv,
      .sampler = corollary_sampler(left_v),
      .evaluate =
          [](const Sample& s) {
            const int n = s.n;
            const cplx l1 = plog(1.0 - s.v);
            return Evaluation{f_inv_n(n, s.v) - f_inv_n(n, 1.0 / (1.0 - s.v)),
                              pi2 / (6.0 * n) - l1 * plog((1.0 - s.v) / (s.v * s.v)) / (2.0 * n) -
                                  0.5 * (log_sq_root_sum(n, s.v, false) - log_sq_root_sum(n, 1.0 - s.v, true))};
          },
      .corners = {{0.0, 1.0, -1.0, 1}, {0.0, 1.0, cplx(-0.5, 0.5), 2}},
  });
  reg.push_back({
      .id = "corollary_3b",
      .name = "F(1/n;1,1-v) + F(1/n;1,1/(1-v)) in logarithms",
      .anchor = "For Re(v) < 0: F(1/n;1,1-v) + F(1/n;1,1/(1-v)) = -pi^2/(3n) + log(1-v)log((1-v)/v^2)/(2n) + "
                "log(1-v)log(v)/n - (1/2) sum_j (log^2(1 - (1-v)^(1/n) e_j) + log^2(1 - (1-v)^(-1/n) e_j))",
      .params = nv,
      .sampler = corollary_sampler(left_v_off_axis),
      .evaluate =
          [](const Sample& s) {
            const int n = s.n;
            const cplx l1 = plog(1.0 - s.v);
            return Evaluation{f_inv_n(n, 1.0 - s.v) + f_inv_n(n, 1.0 / (1.0 - s.v)),
                              -pi2 / (3.0 * n) + l1 * plog((1.0 - s.v) / (s.v * s.v)) / (2.0 * n) +
                                  l1 * plog(s.v) / static_cast<double>(n) -
                                  0.5 * (log_sq_root_sum(n, 1.0 - s.v, false) + log_sq_root_sum(n, 1.0 - s.v, true))};
          },
      .corners = {{0.0, 1.0, cplx(-1.0, 0.5), 1}, {0.0, 1.0, cplx(-0.2, -0.9), 3}},
  });

  reg.push_back({
      .id = "elementary_integral",
      .name = "int_0^1 log(1 - t^(1/n))/(2 - t) dt in logarithms",
      .anchor = "F(1/n;1,1/2) = log^2(2)/(2n) - pi^2/(12n) - (1/2) sum_j log^2(1 - 2^(-1/n) e_j)",
      .params = ns,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, r.integer(1, 8)}; },
      .evaluate =
          [](const Sample& s) {
            const int n = s.n;
            const auto direct = integrate_01([n](double t, double omt) {
              const double root = std::pow(t, 1.0 / n);
              const double lead = t < 0.5 ? std::log1p(-root) : std::log(-std::expm1(std::log1p(-omt) / n));
              return cplx(lead / (1.0 + omt));
            });
            cplx closed = log2 * log2 / (2.0 * n) - pi2 / (12.0 * n);
            for (cplx e : roots_of_unity(n)) closed -= 0.5 * sq(plog(1.0 - std::pow(2.0, -1.0 / n) * e));
            return Evaluation{require_converged(direct, "elementary_integral"), closed};
          },
      .corners = {{0.0, 0.0, 0.0, 1}, {0.0, 0.0, 0.0, 2}, {0.0, 0.0, 0.0, 3}, {0.0, 0.0, 0.0, 5}},
  });

  reg.push_back({
      .id = "lemma_integral",
      .name = "int_0^1 log(1 - alpha t)/(t (1 - beta t)) dt in dilogarithms",
      .anchor = "For alpha in D, beta in D': the integral equals Li2(beta/(beta-1)) - Li2((alpha-beta)/(1-beta))",
      .params = {"u", "v"},
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        Sample s{0.0, closed_disk(r), closed_disk(r)};
        if (std::abs(s.u) < kClearance || std::abs(s.v) < kClearance || !clear_of(s.v, 1.0)) return std::nullopt;
        if (!dilog_args_clear({s.v / (s.v - 1.0), (s.u - s.v) / (1.0 - s.v)})) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            const auto e = lemma_int_eval(s.u, s.v);
            return Evaluation{e.quadrature, e.closed};
          },
      .corners = {{0.0, 1.0, 0.5}, {0.0, -1.0, cplx(0.0, 0.5)}},
  });

  reg.push_back({
      .id = "j_fe",
      .name = "two-term functional equation of J",
      .anchor = "J(x) + J(1/x) = log^2(2)",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_polar(r)); },
      .evaluate = [](const Sample& s) { return Evaluation{j_integral(s.x) + j_integral(1.0 / s.x), log2 * log2}; },
      .corners = {{1.0}, {pi}},
  });
  reg.push_back({
      .id = "cal_j_antisymmetry",
      .name = "antisymmetry of the normalized J",
      .anchor = "calJ(x) = J(x) - log^2(2)/2 + pi^2/24 (x - 1/x) satisfies calJ(x) + calJ(1/x) = 0",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_polar(r)); },
      .evaluate = [](const Sample& s) { return Evaluation{cal_j(s.x) + cal_j(1.0 / s.x), 0.0}; },
      .corners = {{1.0}, {std::exp(1.0)}},
  });
  reg.push_back({
      .id = "j_via_herglotz",
      .name = "J through the Herglotz function",
      .anchor = "J(x) = F(2x) - 2F(x) + F(x/2) + pi^2/(12x)",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_box(r)); },
      .evaluate = [](const Sample& s) { return residual_only(jxfx_residual(s.x)); },
      .corners = {{1.0}, {2.0}, {0.3}},
      .default_tol = 1e-8,
  });

  const char* three_term_names[] = {"J(x) through F", "three-term relation for J through F",
                                    "three-term relation for J through F(x;1,-1)"};
  const char* three_term_anchors[] = {
      "J(x) = F(x) - F((x-1)/2) + F((x-1)/(2x)) + pi^2(2x+1)/(12x) + gamma^2/2 + gamma_1 + log^2(2)/2 + Li2(1/x)",
      "J(x) - J(x-1) + J(x/(x-1)) = F(x/2) + F((x-1)/x) - F((x-1)/2) + 2Li2(1/x) + Li2((x-1)/x) - "
      "pi^2(x^2+1)/(12x(x-1)) + gamma^2/2 + gamma_1 + (1/2){log^2 2 + log^2(2x) + log^2(x/(x-1)) - log^2(2(x-1))}",
      "J(x) - J(x-1) + J(x/(x-1)) = F(x;1,-1) - F(x-1;1,-1) + Li2(1/x) + Li2((x-1)/x) - pi^2(2x+1)/(12x) + (1/2){log^2 "
      "2 + log^2(2x) + log^2(x/(x-1)) - log^2(2(x-1))}"};
  for (int k = 0; k < 3; ++k) {
    reg.push_back({
        .id = "j_three_term_" + std::to_string(k + 1),
        .name = three_term_names[k],
        .anchor = three_term_anchors[k],
        .params = xs,
        .sampler = j_three_term_sampler,
        .evaluate =
            [k](const Sample& s) {
              const auto r = j_three_term_residuals(s.x);
              return residual_only(k == 0 ? r.r1 : k == 1 ? r.r2 : r.r3);
            },
        .corners = {{2.0}, {3.5}, {cplx(2.0, 0.5)}},
        .default_tol = 1e-8,
    });
  }

  reg.push_back({
      .id = "j_at_n",
      .name = "J at positive integers",
      .anchor = "J(n) = pi^2/12 (1/n - n) + (n/2)log^2(2) + sum_{j=1}^n Li2((1 + e^(pi i(2j+1)/n))/2)",
      .params = ns,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, r.integer(1, 6)}; },
      .evaluate = [](const Sample& s) { return Evaluation{j_at_n(s.n), j_integral(static_cast<double>(s.n))}; },
      .corners = {{0.0, 0.0, 0.0, 1}, {0.0, 0.0, 0.0, 2}},
      .default_tol = 1e-8,
  });
  reg.push_back({
      .id = "j_inv_n",
      .name = "J at reciprocals of integers",
      .anchor = "J(1/n) = pi^2/12 (n - 1/n) + (1 - n/2)log^2(2) - sum_{j=1}^n Li2((1 + e^(pi i(2j+1)/n))/2)",
      .params = ns,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, r.integer(1, 6)}; },
      .evaluate = [](const Sample& s) { return Evaluation{j_inv_n(s.n), j_integral(1.0 / s.n)}; },
      .corners = {{0.0, 0.0, 0.0, 2}},
      .default_tol = 1e-8,
  });
  reg.push_back({
      .id = "j_even",
      .name = "J at even integers through log-sines",
      .anchor = "J(2m) = pi^2/48 (1/m - 2m) + m log^2(2) - sum_{j=0}^{m-1} log sin(pi(2j+1)/(4m)) log cos(pi(2j+1)/(4m))",
      .params = ms,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, 0, r.integer(1, 6)}; },
      .evaluate = [](const Sample& s) { return Evaluation{j_even(s.m), j_at_n(2 * s.m)}; },
      .corners = {{0.0, 0.0, 0.0, 0, 1}, {0.0, 0.0, 0.0, 0, 4}},
      .default_tol = 1e-10,
  });
  reg.push_back({
      .id = "j_even_inv",
      .name = "J at reciprocals of even integers through log-sines",
      .anchor = "J(1/(2m)) = pi^2/48 (2m - 1/m) + (1 - m)log^2(2) + sum_{j=0}^{m-1} log sin(pi(2j+1)/(4m)) log "
                "cos(pi(2j+1)/(4m))",
      .params = ms,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, 0, r.integer(1, 6)}; },
      .evaluate = [](const Sample& s) { return Evaluation{j_even_inv(s.m), j_inv_n(2 * s.m)}; },
      .corners = {{0.0, 0.0, 0.0, 0, 1}},
      .default_tol = 1e-10,
  });

  struct LogSinPart {
    const char* id;
    const char* name;
    const char* anchor;
    double LogSinSums::*value;
    double LogSinSums::*closed;
  };
  const LogSinPart parts[] = {
      {"logsin_half", "log-sine sum at odd multiples of pi/(2m)",
       "sum_{j=0}^{m-1} log sin(pi(2j+1)/(2m)) = (1 - m) log 2", &LogSinSums::s1, &LogSinSums::s1_closed},
      {"logsin_quarter_sin", "log-sine sum at odd multiples of pi/(4m)",
       "sum_{j=0}^{m-1} log sin(pi(2j+1)/(4m)) = (1/2 - m) log 2", &LogSinSums::s2_sin, &LogSinSums::s2_closed},
      {"logsin_quarter_cos", "log-cosine sum at odd multiples of pi/(4m)",
       "sum_{j=0}^{m-1} log cos(pi(2j+1)/(4m)) = (1/2 - m) log 2", &LogSinSums::s2_cos, &LogSinSums::s2_closed},
      {"logsin_weighted", "weighted log-sine sum",
       "sum_{j=0}^{m-1} j log sin(pi(2j+1)/(2m)) = -(m-1)^2 log(2)/2", &LogSinSums::s3, &LogSinSums::s3_closed},
  };
  for (const auto& part : parts) {
    reg.push_back({
        .id = part.id,
        .name = part.name,
        .anchor = part.anchor,
        .params = ms,
        .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, 0, r.integer(1, 50)}; },
        .evaluate =
            [part](const Sample& s) {
              const auto sums = logsin_sums(s.m);
              return Evaluation{sums.*part.value, sums.*part.closed};
            },
        .corners = {{0.0, 0.0, 0.0, 0, 1}, {0.0, 0.0, 0.0, 0, 2}, {0.0, 0.0, 0.0, 0, 50}},
        .default_tol = 1e-13,
    });
  }

  reg.push_back({
      .id = "t_representation",
      .name = "T as a combination of F(x;u,v)",
      .anchor = "T(x) = (1/4){F(x;i,i) + F(x;-i,-i) - F(x;i,-i) - F(x;-i,i)}",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_box(r)); },
      .evaluate = [](const Sample& s) { return Evaluation{t_from_hzn(s.x), t_integral(s.x)}; },
      .corners = {{1.0}, {2.0}, {0.5}, {pi}},
  });
  reg.push_back({
      .id = "t_j_relation",
      .name = "relation between T, J and F(x;u,v)",
      .anchor = "4T(x) + J(x) + 2F(x;i,-i) + 2F(x;-i,i) = 0",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_box(r)); },
      .evaluate =
          [](const Sample& s) {
            return residual_only(4.0 * t_integral(s.x) + j_integral(s.x) + 2.0 * hzn_integral({s.x, kI, -kI}) +
                                 2.0 * hzn_integral({s.x, -kI, kI}));
          },
      .corners = {{1.7}},
  });
  reg.push_back({
      .id = "t_fe",
      .name = "two-term functional equation of T",
      .anchor = "T(x) + T(1/x) = pi^2/16",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_polar(r)); },
      .evaluate = [](const Sample& s) { return Evaluation{t_integral(s.x) + t_integral(1.0 / s.x), pi2 / 16}; },
      .corners = {{1.0}, {std::sqrt(2.0)}},
  });
  reg.push_back({
      .id = "cal_t_antisymmetry",
      .name = "antisymmetry of the normalized T",
      .anchor = "calT(x) = T(x) - pi^2/32 satisfies calT(x) + calT(1/x) = 0",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_polar(r)); },
      .evaluate = [](const Sample& s) { return Evaluation{cal_t(s.x) + cal_t(1.0 / s.x), 0.0}; },
      .corners = {{3.0}},
  });
  reg.push_back({
      .id = "t_at_n",
      .name = "T at positive integers",
      .anchor = "T(n) = (1/4) sum_{j=1}^n {Li2(a(1 - e_+)) + Li2(b(1 + e_-)) - Li2(b(1 + e_+)) - Li2(a(1 - e_-))}, "
                "a = (1+i)/2, b = (1-i)/2, e_+- = e^(pi i(4j+n+-1)/(2n))",
      .params = ns,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, r.integer(1, 6)}; },
      .evaluate = [](const Sample& s) { return Evaluation{t_at_n(s.n), t_integral(static_cast<double>(s.n))}; },
      .corners = {{0.0, 0.0, 0.0, 1}},
      .default_tol = 1e-8,
  });
  reg.push_back({
      .id = "t_inv_n",
      .name = "T at reciprocals of integers",
      .anchor = "T(1/n) = pi^2/16 - T(n)",
      .params = ns,
      .sampler = [](SampleRng& r) -> std::optional<Sample> { return Sample{0.0, 0.0, 0.0, r.integer(1, 6)}; },
      .evaluate = [](const Sample& s) { return Evaluation{t_inv_n(s.n), t_integral(1.0 / s.n)}; },
      .corners = {{0.0, 0.0, 0.0, 3}},
      .default_tol = 1e-8,
  });

  const double c0 = herglotz_constant();
  reg.push_back({
      .id = "zagier_two_term",
      .name = "two-term functional equation of the Herglotz function",
      .anchor = "F(x) + F(1/x) = -2(gamma^2/2 + pi^2/12 + gamma_1) + log^2(x)/2 - pi^2 (x-1)^2/(6x)",
      .params = xs,
      .sampler = cprime_sampler,
      .evaluate =
          [c0](const Sample& s) {
            return Evaluation{herglotz_eval(s.x) + herglotz_eval(1.0 / s.x),
                              -2.0 * c0 + 0.5 * sq(plog(s.x)) - pi2 * sq(s.x - 1.0) / (6.0 * s.x)};
          },
      .corners = {{1.0}, {3.0}},
      .default_tol = 1e-8,
  });
  reg.push_back({
      .id = "zagier_three_term",
      .name = "three-term functional equation of the Herglotz function",
      .anchor = "F(x) - F(x+1) - F(x/(x+1)) = gamma^2/2 + pi^2/12 + gamma_1 + Li2(1/(1+x))",
      .params = xs,
      .sampler = cprime_sampler,
      .evaluate =
          [c0](const Sample& s) {
            return Evaluation{herglotz_eval(s.x) - herglotz_eval(s.x + 1.0) - herglotz_eval(s.x / (s.x + 1.0)),
                              c0 + dilog(1.0 / (1.0 + s.x))};
          },
      .corners = {{1.0}},
      .default_tol = 1e-8,
  });

  reg.push_back({
      .id = "connection_1",
      .name = "compensated limit u, v -> 1 gives F",
      .anchor = "lim_{u,v->1} {F(x;u,v) - Li2(u)/x + log(1-u)(log(1-v) + gamma + log x) + Li_s'(u)|_{s=1}} = F(x)",
      .kind = IdentityKind::limit,
      .params = xs,
      .sampler = limit_sampler,
      .evaluate = [](const Sample& s) { return limit_evaluation(conn_limits(s.x, kLimitLadder).part1); },
      .corners = {{2.0}},
  });
  reg.push_back({
      .id = "connection_2",
      .name = "F(x;1,-1) through the Herglotz function",
      .anchor = "F(x;1,-1) = F(x/2) - F(x) + pi^2/(6x)",
      .params = xs,
      .sampler = [](SampleRng& r) { return x_only(right_box(r)); },
      .evaluate = [](const Sample& s) { return residual_only(conn_u1_vm1(s.x)); },
      .corners = {{1.0}, {2.0}, {0.5}},
  });
  reg.push_back({
      .id = "connection_3",
      .name = "compensated limit v -> 1 at u = -1",
      .anchor = "lim_{v->1} {F(x;-1,v) + log(2)log(1-v)} = F(2x) - F(x) - log(2)log(2x^2)/2 - pi^2/(12x)",
      .kind = IdentityKind::limit,
      .params = xs,
      .sampler = limit_sampler,
      .evaluate = [](const Sample& s) { return limit_evaluation(conn_limits(s.x, kLimitLadder).part3); },
      .corners = {{1.5}, {1.0}},
  });

  auto dilog_box = [](SampleRng& r) -> std::optional<Sample> {
    Sample s{0.0, cplx(r.uniform(-3.0, 3.0), r.uniform(-3.0, 3.0))};
    if (!clear_of_ray(s.u, 1.0) || std::abs(s.u) < kClearance) return std::nullopt;
    return s;
  };
  reg.push_back({
      .id = "dilog_reflection",
      .name = "dilogarithm at z and z/(z-1)",
      .anchor = "Li2(z) + Li2(z/(z-1)) = -log^2(1-z)/2",
      .params = {"u"},
      .sampler = dilog_box,
      .evaluate = [](const Sample& s) { return Evaluation{dilog(s.u) + dilog(s.u / (s.u - 1.0)), -0.5 * sq(plog(1.0 - s.u))}; },
      .corners = {{0.0, 0.5}, {0.0, -1.0}},
  });
  reg.push_back({
      .id = "dilog_euler",
      .name = "Euler reflection of the dilogarithm",
      .anchor = "Li2(z) + Li2(1-z) = pi^2/6 - log(z) log(1-z)",
      .params = {"u"},
      .sampler =
          [dilog_box](SampleRng& r) -> std::optional<Sample> {
        auto s = dilog_box(r);
        if (!s || !clear_of_ray(-s->u, 0.0)) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            return Evaluation{dilog(s.u) + dilog(1.0 - s.u), pi2 / 6 - plog(s.u) * plog(1.0 - s.u)};
          },
      .corners = {{0.0, 0.5}},
  });
  reg.push_back({
      .id = "dilog_landen",
      .name = "dilogarithm at z and 1/(1-z)",
      .anchor = "Li2(z) - Li2(1/(1-z)) = log(1-z) log((1-z)/z^2)/2 - pi^2/6",
      .params = {"u"},
      .sampler =
          [dilog_box](SampleRng& r) -> std::optional<Sample> {
        auto s = dilog_box(r);
        if (!s || !(s->u.real() < -kClearance)) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            return Evaluation{dilog(s.u) - dilog(1.0 / (1.0 - s.u)),
                              0.5 * plog(1.0 - s.u) * plog((1.0 - s.u) / (s.u * s.u)) - pi2 / 6};
          },
      .corners = {{0.0, -1.0}},
  });

  reg.push_back({
      .id = "slash_composition",
      .name = "composition law of the slash action",
      .anchor = "(f|M)|N = f|(MN) for f = F(x;u,v), M, N in {S, T, U}",
      .params = {"x", "u", "v", "n", "m"},
      .sampler =
          [](SampleRng& r) -> std::optional<Sample> {
        Sample s{cplx(r.uniform(-3.0, 3.0), r.uniform(0.2, 3.0)), on_circle(r), on_circle(r), r.integer(0, 2),
                 r.integer(0, 2)};
        const IntMatrix2 mn = kSlashGenerators[static_cast<std::size_t>(s.n)] *
                              kSlashGenerators[static_cast<std::size_t>(s.m)];
        const HznPoint q = act_point(mn, {s.x, s.u, s.v});
        if (!(q.x.real() > 0.05) || !clear_of(q.v, 1.0)) return std::nullopt;
        return s;
      },
      .evaluate =
          [](const Sample& s) {
            const IntMatrix2& m = kSlashGenerators[static_cast<std::size_t>(s.n)];
            const IntMatrix2& n = kSlashGenerators[static_cast<std::size_t>(s.m)];
            const HznPoint p{s.x, s.u, s.v};
            return Evaluation{slash(slash(slash_target, m), n)(p), slash(slash_target, m * n)(p)};
          },
      .corners = {},
      .default_tol = 1e-12,
  });

  return reg;
}

const std::vector<Identity>& builtin_registry() {
  static const std::vector<Identity> registry = register_builtin();
  return registry;
}

std::string discrepancy_name(DiscrepancyKind k) {
  switch (k) {
    case DiscrepancyKind::none: return "none";
    case DiscrepancyKind::constant_offset: return "constant_offset";
    case DiscrepancyKind::sign_flip: return "sign_flip";
    case DiscrepancyKind::unstructured: return "unstructured";
  }
  return "?";
}

namespace {

CheckResult check_one(const Identity& id, const Sample& s, std::size_t index, bool corner, double tol) {
  CheckResult out;
  out.id = id.id;
  out.index = index;
  out.corner = corner;
  out.sample = s;
  try {
    const Evaluation e = id.evaluate(s);
    out.lhs = e.lhs;
    out.rhs = e.rhs;
    out.abs_err = std::abs(e.lhs - e.rhs);
    const double scale = std::max(std::abs(e.lhs), std::abs(e.rhs));
    out.rel_err = scale > 0.0 ? out.abs_err / scale : 0.0;
    if (id.kind == IdentityKind::limit) {
      out.decay = e.decay;
      out.pass = e.monotone && e.decay >= kLimitDecay;
    } else {
      out.pass = out.abs_err <= tol || out.rel_err <= tol;
    }
    if (!std::isfinite(out.abs_err)) {
      out.pass = false;
      out.reason = "non-finite residual";
    }
  } catch (const std::exception& ex) {
    out.pass = false;
    out.reason = ex.what();
  }
  return out;
}

Discrepancy fit_discrepancy(const std::vector<CheckResult>& results, double tol) {
  std::vector<const CheckResult*> evaluated;
  for (const auto& r : results) {
    if (r.reason.empty()) evaluated.push_back(&r);
  }
  if (evaluated.size() < 2) return {DiscrepancyKind::unstructured, {}};
  cplx mean = 0.0;
  for (const auto* r : evaluated) mean += r->lhs - r->rhs;
  mean /= static_cast<double>(evaluated.size());
  double spread = 0.0;
  double flip = 0.0;
  for (const auto* r : evaluated) {
    spread = std::max(spread, std::abs(r->lhs - r->rhs - mean));
    flip = std::max(flip, std::abs(r->lhs + r->rhs) / std::max(1.0, std::abs(r->lhs)));
  }
  if (std::abs(mean) > tol && spread <= tol * std::max(1.0, std::abs(mean))) {
    return {DiscrepancyKind::constant_offset, mean};
  }
  if (flip <= tol) return {DiscrepancyKind::sign_flip, {}};
  return {DiscrepancyKind::unstructured, {}};
}

}  // namespace

IdentityRecord run_identity(const Identity& id, std::uint64_t seed, int samples, std::optional<double> tol_override) {
  if (samples < 1) throw DomainError("run_identity: samples must be at least 1");
  const double tol = tol_override.value_or(id.default_tol);
  IdentityRecord rec;
  rec.id = id.id;
  rec.name = id.name;
  rec.anchor = id.anchor;
  rec.kind = id.kind;
  rec.params = id.params;
  rec.tol = tol;

  std::size_t index = 0;
  for (const auto& c : id.corners) rec.results.push_back(check_one(id, c, index++, true, tol));

  SampleRng rng(splitmix64(seed ^ fnv1a(id.id)));
  for (int k = 0; k < samples; ++k) {
    std::optional<Sample> s;
    for (int draw = 0; draw < kMaxDraws && !s; ++draw) {
      s = id.sampler(rng);
      if (!s) ++rec.rejected_samples;
    }
    if (!s) {
      CheckResult fail;
      fail.id = id.id;
      fail.index = index++;
      fail.reason = "sampler found no admissible point";
      rec.results.push_back(std::move(fail));
      continue;
    }
    rec.results.push_back(check_one(id, *s, index++, false, tol));
  }

  rec.samples = rec.results.size();
  double sum = 0.0;
  std::size_t evaluated = 0;
  rec.min_decay = id.kind == IdentityKind::limit ? std::numeric_limits<double>::infinity() : 0.0;
  for (const auto& r : rec.results) {
    if (!r.pass) ++rec.failures;
    if (!r.reason.empty()) continue;
    ++evaluated;
    sum += r.abs_err;
    rec.max_abs_err = std::max(rec.max_abs_err, r.abs_err);
    if (id.kind == IdentityKind::limit) rec.min_decay = std::min(rec.min_decay, r.decay);
  }
  rec.mean_abs_err = evaluated ? sum / static_cast<double>(evaluated) : 0.0;
  rec.pass = rec.failures == 0;
  if (!rec.pass && id.kind == IdentityKind::exact) rec.discrepancy = fit_discrepancy(rec.results, tol);
  return rec;
}

Report run_all(std::uint64_t seed, int samples_per_identity, std::optional<double> tol_override,
               std::span<const std::string> ids) {
  if (samples_per_identity < 1) throw DomainError("run_all: samples_per_identity must be at least 1");
  if (tol_override && !(*tol_override > 0.0)) throw DomainError("run_all: tolerance must be positive");
  const auto& registry = builtin_registry();

  std::set<std::string> wanted(ids.begin(), ids.end());
  for (const auto& w : wanted) {
    const bool known = std::any_of(registry.begin(), registry.end(), [&](const Identity& i) { return i.id == w; });
    if (!known) throw DomainError("run_all: unknown identity id '" + w + "'");
  }

  Report report;
  report.seed = seed;
  report.tolerance = tol_override.value_or(kDefaultIdentityTol);
  report.tolerance_overridden = tol_override.has_value();
  report.samples_per_identity = static_cast<std::size_t>(samples_per_identity);
  for (const auto& id : registry) {
    if (!wanted.empty() && !wanted.count(id.id)) continue;
    report.identities.push_back(run_identity(id, seed, samples_per_identity, tol_override));
    ++report.summary.total;
    ++(report.identities.back().pass ? report.summary.passed : report.summary.failed);
  }
  return report;
}

}  // namespace hzn
