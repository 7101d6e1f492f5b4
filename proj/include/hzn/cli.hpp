#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hzn/identities.hpp"
#include "hzn/tables.hpp"

namespace hzn::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,  // also domain errors
  kNonConvergence = 3,
  kIo = 4,
};

enum class Format { json, csv, markdown };

struct CliConfig {
  double default_tol = kDefaultIdentityTol;
  std::uint64_t seed = 7;
  int samples = 100;
  Format format = Format::json;
  bool cross_check = false;
};

// Parses "a+bi", "a-bi", "a", "bi", "i", "-i", with optional exponents.
// Throws DomainError on anything else.
cplx parse_complex(std::string_view text);

// Shortest round-trip form, "a", "a+bi" or "a-bi".
std::string format_complex(cplx z);

// Reads HZN_TOL; nullopt when unset. Throws DomainError if it is not a
// positive number.
std::optional<double> env_tolerance();

// Stable identifier derived from the run parameters.
std::string make_run_id(std::uint64_t seed, int samples, std::optional<double> tol,
                        const std::vector<std::string>& ids);

// Serializers shared by verify, tables and report.
std::string report_json(const Report& report, const std::vector<SpecialValueRecord>* tables,
                        const std::optional<std::string>& run_id);
std::string report_csv(const Report& report);
std::string report_markdown(const Report& report);
std::string tables_json(const std::vector<SpecialValueRecord>& rows);
std::string tables_csv(const std::vector<SpecialValueRecord>& rows);
std::string tables_markdown(const std::vector<SpecialValueRecord>& rows);

// Entry point. Never throws; returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hzn::cli
