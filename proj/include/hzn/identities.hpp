#pragma once

// Registry of checkable identities with seeded samplers, and the runner that
// turns them into residual reports.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hzn/hzn.hpp"
#include "hzn/slash.hpp"

namespace hzn {

enum class IdentityKind { exact, limit };

// Parameter tuple. Each identity lists which fields it uses.
struct Sample {
  cplx x{};
  cplx u{};
  cplx v{};
  int n = 0;
  int m = 0;
};

struct Evaluation {
  cplx lhs{};
  cplx rhs{};
  // Limit identities only: smallest residual ratio per decade of eps and
  // whether residuals shrink strictly along the ladder.
  double decay = 0.0;
  bool monotone = true;
};

// mt19937_64 with a platform-independent mapping to [0, 1).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

struct Identity {
  std::string id;
  std::string name;
  std::string anchor;
  IdentityKind kind = IdentityKind::exact;
  std::vector<std::string> params;
  // Returns nullopt when a draw falls outside the hypotheses; the runner
  // redraws and counts the rejection.
  std::function<std::optional<Sample>(SampleRng&)> sampler;
  std::function<Evaluation(const Sample&)> evaluate;
  std::vector<Sample> corners;
  double default_tol = 1e-9;
};

// Residual ratio per eps decade required of limit identities.
inline constexpr double kLimitDecay = 5.0;
inline constexpr double kDefaultIdentityTol = 1e-9;

const std::vector<Identity>& builtin_registry();
std::vector<Identity> register_builtin();

struct CheckResult {
  std::string id;
  std::size_t index = 0;
  bool corner = false;
  Sample sample;
  cplx lhs{};
  cplx rhs{};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double decay = 0.0;
  bool pass = false;
  std::string reason;  // set when evaluation threw
};

enum class DiscrepancyKind { none, constant_offset, sign_flip, unstructured };
std::string discrepancy_name(DiscrepancyKind k);

struct Discrepancy {
  DiscrepancyKind kind = DiscrepancyKind::none;
  cplx offset{};  // fitted lhs - rhs for a constant offset
};

struct IdentityRecord {
  std::string id;
  std::string name;
  std::string anchor;
  IdentityKind kind = IdentityKind::exact;
  std::vector<std::string> params;
  double tol = 0.0;
  std::size_t samples = 0;
  std::size_t rejected_samples = 0;
  double max_abs_err = 0.0;
  double mean_abs_err = 0.0;
  double min_decay = 0.0;
  std::size_t failures = 0;
  bool pass = false;
  Discrepancy discrepancy;
  std::vector<CheckResult> results;
};

struct ReportSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Report {
  std::uint64_t seed = 0;
  double tolerance = kDefaultIdentityTol;
  bool tolerance_overridden = false;
  std::size_t samples_per_identity = 0;
  std::vector<IdentityRecord> identities;
  ReportSummary summary;
};

// Corner cases first, then `samples` sampled points. The seed is mixed with the
// identity id so each identity draws an independent stream.
IdentityRecord run_identity(const Identity& id, std::uint64_t seed, int samples,
                            std::optional<double> tol_override = std::nullopt);

// Runs the selected identities (all when ids is empty). Deterministic in seed.
// Throws DomainError for samples < 1 or an unknown id.
Report run_all(std::uint64_t seed, int samples_per_identity, std::optional<double> tol_override = std::nullopt,
               std::span<const std::string> ids = {});

// Argument lists of the expanded three- and six-term relations over the base
// point [x, (u, v)], with the sign each term carries.
struct SignedArgument {
  int sign;
  MonomialPoint point;
};
std::array<SignedArgument, 3> three_term_arguments();
std::array<SignedArgument, 6> six_term_arguments();

}  // namespace hzn
