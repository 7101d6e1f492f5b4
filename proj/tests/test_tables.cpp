#include <cmath>
#include <string>

#include "doctest.h"
#include "hzn/error.hpp"
#include "hzn/tables.hpp"

using hzn::cplx;
using hzn::FnTag;
using hzn::QuadraticArg;

namespace {

// 30-digit quadrature of the defining integrals, computed independently.
struct Reference {
  const char* arg;
  double value;
};

constexpr Reference kJ[] = {
    {"2-√3", 0.385891336391205702},   {"3-√8", 0.416431598075321275},   {"4-√15", 0.431825056977317800},
    {"5-√24", 0.441197683628003387},  {"6-√35", 0.447523567009992784},  {"8-√63", 0.455535218466489518},
    {"11-√120", 0.462188886480062110}, {"12-√143", 0.463680724158577645}, {"13-√168", 0.464947007423594065},
    {"14-√195", 0.466035340606639759},
};

constexpr Reference kT[] = {
    {"3-√8", 0.540485072960259681},  {"5-√24", 0.571070821146208657}, {"11-√120", 0.596035935422026220},
    {"13-√168", 0.599237468243563880}, {"3+√8", 0.0763652021078252323},
};

const double l22 = hzn::constants::log2 * hzn::constants::log2;
const double pi2 = hzn::constants::pi * hzn::constants::pi;

}  // namespace

TEST_CASE("quadratic arguments") {
  const QuadraticArg a{14, 1, 195, -1};
  CHECK(a.norm() == 1);
  CHECK(a.value() == doctest::Approx(14.0 - std::sqrt(195.0)).epsilon(1e-15));
  CHECK(std::abs(a.value() * a.reciprocal().value() - 1.0) < 1e-15);
  CHECK(a.reciprocal() == QuadraticArg{14, 1, 195, 1});
  CHECK(a.reciprocal().reciprocal() == a);
  CHECK(a.display() == "14-√195");
  CHECK(a.ascii() == "14-sqrt(195)");
  CHECK(QuadraticArg{5, 2, 6, -1}.display() == "5-2√6");
  CHECK(QuadraticArg{5, 2, 6, -1}.value() == doctest::Approx(5.0 - 2.0 * std::sqrt(6.0)).epsilon(1e-15));
  // 1 + sqrt 2 has norm -1.
  CHECK(std::abs(QuadraticArg{1, 1, 2, 1}.reciprocal().value() - (std::sqrt(2.0) - 1.0)) < 1e-15);
  const QuadraticArg non_unit{1, 1, 3, 1};
  CHECK_THROWS_AS(non_unit.reciprocal(), hzn::DomainError);
}

TEST_CASE("table shapes") {
  const auto t1 = hzn::table1_rows();
  const auto t2 = hzn::table2_rows();
  REQUIRE(t1.size() == 10);
  REQUIRE(t2.size() == 5);
  for (const auto& r : t1) {
    CHECK(r.fn_tag == FnTag::J);
    CHECK(r.arg.value() > 0.0);
    CHECK(r.arg.norm() == 1);
  }
  for (const auto& r : t2) CHECK(r.fn_tag == FnTag::T);
  CHECK(t2.back().arg == QuadraticArg{3, 1, 8, 1});
}

TEST_CASE("closed forms against independent references") {
  const auto t1 = hzn::table1_rows();
  for (std::size_t k = 0; k < t1.size(); ++k) {
    CAPTURE(k);
    CHECK(t1[k].arg.display() == kJ[k].arg);
    const cplx c = t1[k].closed_form();
    CHECK(std::abs(c.imag()) < 1e-13);
    CHECK(std::abs(c.real() - kJ[k].value) < 1e-14);
  }
  const auto t2 = hzn::table2_rows();
  for (std::size_t k = 0; k < t2.size(); ++k) {
    CAPTURE(k);
    CHECK(t2[k].arg.display() == kT[k].arg);
    const cplx c = t2[k].closed_form();
    CHECK(std::abs(c.imag()) < 1e-13);
    CHECK(std::abs(c.real() - kT[k].value) < 1e-14);
  }
}

TEST_CASE("spot values") {
  const auto t1 = hzn::table1_rows();
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(t1[0].closed_form() -
                 (l22 - pi2 / 12 * (1 - s3) - hzn::constants::log2 * std::log(1 + s3))) < 1e-15);
  const auto t2 = hzn::table2_rows();
  CHECK(std::abs(t2[4].closed_form() - hzn::constants::log2 * std::log(3 + std::sqrt(8.0)) / 16) < 1e-16);
}

TEST_CASE("verify_tables") {
  const auto all = hzn::verify_tables();
  REQUIRE(all.size() == 15);
  for (const auto& r : all) {
    CAPTURE(r.argument);
    CHECK(r.reason.empty());
    CHECK(r.pass);
    CHECK(r.abs_err == doctest::Approx(std::abs(r.closed_form - r.direct)));
    CHECK(r.abs_err < (r.fn_tag == FnTag::T ? 1e-9 : 1e-8));
    CHECK(std::abs(r.direct.imag()) < 1e-13);
  }
  CHECK(hzn::verify_tables(1).size() == 10);
  CHECK(hzn::verify_tables(2).size() == 5);
  CHECK(hzn::verify_tables(2).front().argument == "3-√8");
  CHECK_THROWS_AS(hzn::verify_tables(3), hzn::DomainError);
}

TEST_CASE("failing quadrature is recorded per row") {
  hzn::TableConfig cfg;
  cfg.quad = {1e-300, 1, 1};
  cfg.small = {1e-300, 1, 1};
  const auto rows = hzn::verify_tables(2, cfg);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.reason.empty());
    CHECK(std::isnan(r.abs_err));
  }
}

TEST_CASE("functional equation cross-checks") {
  const auto checks = hzn::table_fe_cross_checks();
  REQUIRE(checks.size() == 15);
  for (const auto& c : checks) {
    CAPTURE(c.argument);
    CHECK(c.reason.empty());
    CHECK(c.abs_err < 1e-8);
    CHECK(std::abs(c.expected - (c.fn_tag == FnTag::J ? l22 : pi2 / 16)) == 0.0);
  }
  // J(2-√3) + J(2+√3) = log^2 2, both sides by quadrature.
  const double a = 2.0 - std::sqrt(3.0);
  const double b = 2.0 + std::sqrt(3.0);
  CHECK(std::abs(hzn::j_integral(a) + hzn::j_integral(b) - l22) < 1e-10);
}
