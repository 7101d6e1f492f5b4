#include "hzn/tables.hpp"

#include <cmath>
#include <exception>

#include "hzn/error.hpp"

namespace hzn {

namespace {

using constants::log2;
using constants::pi;

const double pi2 = pi * pi;

cplx L(double a) { return plog(cplx(a, 0.0)); }
double rt(double a) { return std::sqrt(a); }

const double golden = (1.0 + rt(5.0)) / 2.0;

QuadraticArg minus(long p, long d) { return {p, 1, d, -1}; }

std::string render(const QuadraticArg& a, bool ascii) {
  if (a.q == 0) return std::to_string(a.p);
  const std::string d = std::to_string(a.d);
  const std::string s = (a.q == 1 ? "" : std::to_string(a.q)) + (ascii ? "sqrt(" + d + ")" : "√" + d);
  if (a.p == 0) return (a.sign < 0 ? "-" : "") + s;
  return std::to_string(a.p) + (a.sign < 0 ? "-" : "+") + s;
}

}  // namespace

double QuadraticArg::value() const {
  const double r = static_cast<double>(q) * std::sqrt(static_cast<double>(d));
  const double direct = static_cast<double>(p) + sign * r;
  const double conj = static_cast<double>(p) - sign * r;
  // p + s r = norm / (p - s r); use it when the direct sum cancels.
  if (std::abs(direct) < 0.5 * std::abs(conj)) return static_cast<double>(norm()) / conj;
  return direct;
}

QuadraticArg QuadraticArg::reciprocal() const {
  const long n = norm();
  if (n == 1) return {p, q, d, -sign};
  if (n == -1) return {-p, q, d, sign};
  throw DomainError("QuadraticArg::reciprocal: " + ascii() + " is not a unit");
}

std::string QuadraticArg::display() const { return render(*this, false); }
std::string QuadraticArg::ascii() const { return render(*this, true); }

std::vector<TableRow> table1_rows() {
  const double l22 = log2 * log2;
  return {
      {FnTag::J, minus(2, 3), [=] { return l22 - pi2 / 12 * (1 - rt(3)) - log2 * L(1 + rt(3)); }},
      {FnTag::J, minus(3, 8), [=] { return 0.5 * l22 - pi2 / 24 * (3 - rt(32)) - 0.75 * log2 * L(3 + rt(8)); }},
      {FnTag::J, minus(4, 15),
       [=] { return l22 - pi2 / 12 * (2 - rt(15)) - L(golden) * L(2 + rt(3)) - log2 * L(rt(3) + rt(5)); }},
      {FnTag::J, minus(5, 24),
       [=] {
         return 0.5 * l22 - pi2 / 24 * (5 - rt(96)) - 0.5 * L(1 + rt(2)) * L(2 + rt(3)) - 0.75 * log2 * L(5 + rt(24));
       }},
      {FnTag::J, minus(6, 35),
       [=] { return l22 - pi2 / 12 * (3 - rt(35)) - L(golden) * L(8 + 3 * rt(7)) - log2 * L(rt(5) + rt(7)); }},
      {FnTag::J, minus(8, 63),
       [=] {
         return l22 - pi2 / 12 * (4 - rt(63)) - L((5 + rt(21)) / 2) * L(2 + rt(3)) - log2 * L(3 + rt(7));
       }},
      {FnTag::J, minus(11, 120),
       [=] {
         return 0.5 * l22 - pi2 / 24 * (11 - rt(480)) - 0.5 * L(1 + rt(2)) * L(4 + rt(15)) -
                0.5 * L(2 + rt(3)) * L(3 + rt(10)) - 0.5 * L(golden) * L(5 + rt(24)) - 0.75 * log2 * L(11 + rt(120));
       }},
      {FnTag::J, minus(12, 143),
       [=] {
         return l22 - pi2 / 12 * (6 - rt(143)) - L((3 + rt(13)) / 2) * L(10 + 3 * rt(11)) -
                log2 * L(rt(11) + rt(13));
       }},
      {FnTag::J, minus(13, 168),
       [=] {
         return 0.5 * l22 - pi2 / 24 * (13 - rt(672)) - 0.5 * L(1 + rt(2)) * L((5 + rt(21)) / 2) -
                0.25 * L(2 + rt(3)) * L(15 + rt(224)) - 0.25 * L(5 + rt(24)) * L(8 + rt(63)) -
                0.75 * log2 * L(13 + rt(168));
       }},
      {FnTag::J, minus(14, 195),
       [=] {
         return l22 - pi2 / 12 * (7 - rt(195)) - L(golden) * L(25 + 4 * rt(39)) - L((3 + rt(13)) / 2) * L(4 + rt(15)) -
                log2 * L(rt(15) + rt(13));
       }},
  };
}

std::vector<TableRow> table2_rows() {
  return {
      {FnTag::T, minus(3, 8), [] { return (pi2 - log2 * L(3 + rt(8))) / 16.0; }},
      {FnTag::T, minus(5, 24),
       [] { return (pi2 + log2 * L(5 + rt(24))) / 16.0 - L(1 + rt(2)) * L(2 + rt(3)) / 8.0; }},
      {FnTag::T, minus(11, 120),
       [] {
         return (pi2 - log2 * L(11 + rt(120))) / 16.0 + L(1 + rt(2)) * L(4 + rt(15)) / 8.0 +
                L(2 + rt(3)) * L(3 + rt(10)) / 8.0 - 3.0 / 8.0 * L(golden) * L(5 + rt(24));
       }},
      {FnTag::T, minus(13, 168),
       [] {
         return (pi2 + log2 * L(13 + rt(168)) + 6.0 * L(1 + rt(2)) * L((5 + rt(21)) / 2) -
                 L(2 + rt(3)) * L(15 + rt(224)) - L(5 + rt(24)) * L(8 + rt(63))) /
                16.0;
       }},
      {FnTag::T, {3, 1, 8, 1}, [] { return log2 * L(3 + rt(8)) / 16.0; }},
  };
}

cplx table_function(FnTag tag, double x, const QuadratureConfig& cfg) {
  switch (tag) {
    case FnTag::J: return j_integral(x, cfg);
    case FnTag::T: return t_integral(x, cfg);
    case FnTag::calJ: return cal_j(x, cfg);
    case FnTag::calT: return cal_t(x, cfg);
  }
  throw DomainError("table_function: unknown tag");
}

std::vector<SpecialValueRecord> verify_tables(int which, const TableConfig& cfg) {
  if (which < 0 || which > 2) throw DomainError("verify_tables: table must be 1, 2, or 0 for both");
  std::vector<TableRow> rows;
  if (which != 2) rows = table1_rows();
  if (which != 1) {
    auto t2 = table2_rows();
    rows.insert(rows.end(), t2.begin(), t2.end());
  }

  std::vector<SpecialValueRecord> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    SpecialValueRecord rec;
    rec.fn_tag = row.fn_tag;
    rec.argument = row.arg.display();
    rec.arg_value = row.arg.value();
    rec.closed_form = row.closed_form();
    rec.tol = cfg.tol;
    try {
      rec.direct = table_function(row.fn_tag, rec.arg_value, rec.arg_value < kSmallArg ? cfg.small : cfg.quad);
      rec.abs_err = std::abs(rec.closed_form - rec.direct);
      rec.pass = rec.abs_err < cfg.tol;
    } catch (const std::exception& e) {
      rec.abs_err = std::nan("");
      rec.reason = e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<FeCrossCheck> table_fe_cross_checks(const TableConfig& cfg) {
  std::vector<TableRow> rows = table1_rows();
  for (auto& r : table2_rows()) rows.push_back(std::move(r));
  std::vector<FeCrossCheck> out;
  for (const auto& row : rows) {
    FeCrossCheck c;
    c.fn_tag = row.fn_tag;
    c.argument = row.arg.display();
    c.expected = row.fn_tag == FnTag::J ? cplx(log2 * log2) : cplx(pi2 / 16);
    const double inv = row.arg.reciprocal().value();
    try {
      c.sum = row.closed_form() + table_function(row.fn_tag, inv, inv < kSmallArg ? cfg.small : cfg.quad);
      c.abs_err = std::abs(c.sum - c.expected);
    } catch (const std::exception& e) {
      c.abs_err = std::nan("");
      c.reason = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace hzn
