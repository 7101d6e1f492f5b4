#pragma once

// Tabulated special values of J and T at quadratic units, with direct
// quadrature checks.

#include <functional>
#include <string>
#include <vector>

#include "hzn/classic.hpp"

namespace hzn {

// p + sign * q * sqrt(d), d a positive non-square.
struct QuadraticArg {
  long p = 0;
  long q = 0;
  long d = 2;
  int sign = 1;

  // p^2 - q^2 d
  long norm() const { return p * p - q * q * d; }
  // Evaluated as norm / (p - sign q sqrt d) when that avoids cancellation.
  double value() const;
  // Exact for units (norm = +-1); throws DomainError otherwise.
  QuadraticArg reciprocal() const;
  // "2-√3", "3+√8", "5-2√6".
  std::string display() const;
  // ASCII form: "2-sqrt(3)".
  std::string ascii() const;

  friend bool operator==(const QuadraticArg&, const QuadraticArg&) = default;
};

struct TableRow {
  FnTag fn_tag = FnTag::J;
  QuadraticArg arg;
  std::function<cplx()> closed_form;
};

// Special values of J.
std::vector<TableRow> table1_rows();
// Special values of T, followed by T(3+√8).
std::vector<TableRow> table2_rows();

// Default pass threshold for a row.
inline constexpr double kTableTol = 1e-8;

struct TableConfig {
  // Base quadrature; rows with argument below kSmallArg use `small`.
  QuadratureConfig quad{1e-12, 3, 12};
  QuadratureConfig small{1e-13, 4, 14};
  double tol = kTableTol;
};
inline constexpr double kSmallArg = 0.1;

// Direct evaluation of the tagged function by quadrature.
cplx table_function(FnTag tag, double x, const QuadratureConfig& cfg);

// One record per row of the selected tables (1, 2, or 0 for both). Quadrature
// failures are recorded in the row's reason and mark it failed.
std::vector<SpecialValueRecord> verify_tables(int which = 0, const TableConfig& cfg = {});

// closed_form(x) + f(1/x) against log^2 2 for J and pi^2/16 for T.
struct FeCrossCheck {
  FnTag fn_tag = FnTag::J;
  std::string argument;
  cplx sum{};
  cplx expected{};
  double abs_err = 0.0;
  std::string reason;
};
std::vector<FeCrossCheck> table_fe_cross_checks(const TableConfig& cfg = {});

}  // namespace hzn
