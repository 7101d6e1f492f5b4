#include "hzn/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hzn/error.hpp"
#include "json.hpp"

namespace hzn::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kSchemaTag = "hzn-report/1";

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// 16 significant digits for human-readable output.
std::string display_complex(cplx z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.16g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.16g%+.16gi", z.real(), z.imag());
  }
  return buf;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DomainError("cannot parse complex literal '" + std::string(whole) + "'");
  }
  return v;
}

ordered_json to_json(cplx z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

// nlohmann writes NaN as null; keep that explicit.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json sample_json(const Sample& s, const std::vector<std::string>& params) {
  ordered_json out = ordered_json::object();
  for (const auto& p : params) {
    if (p == "x") out["x"] = to_json(s.x);
    if (p == "u") out["u"] = to_json(s.u);
    if (p == "v") out["v"] = to_json(s.v);
    if (p == "n") out["n"] = s.n;
    if (p == "m") out["m"] = s.m;
  }
  return out;
}

// Failing samples listed per identity; the rest are summarized.
constexpr std::size_t kListedFailures = 10;

ordered_json identity_json(const IdentityRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["name"] = r.name;
  j["anchor"] = r.anchor;
  j["kind"] = r.kind == IdentityKind::limit ? "limit" : "exact";
  j["tol"] = r.tol;
  j["samples"] = r.samples;
  j["rejected_samples"] = r.rejected_samples;
  j["max_abs_err"] = num(r.max_abs_err);
  j["mean_abs_err"] = num(r.mean_abs_err);
  if (r.kind == IdentityKind::limit) j["min_decay"] = num(r.min_decay);
  j["failures"] = r.failures;
  j["pass"] = r.pass;
  if (!r.pass) {
    j["discrepancy"] = {{"kind", discrepancy_name(r.discrepancy.kind)}};
    if (r.discrepancy.kind == DiscrepancyKind::constant_offset) j["discrepancy"]["offset"] = to_json(r.discrepancy.offset);
    ordered_json failed = ordered_json::array();
    for (const auto& c : r.results) {
      if (c.pass) continue;
      if (failed.size() == kListedFailures) break;
      ordered_json f;
      f["index"] = c.index;
      f["corner"] = c.corner;
      f["sample"] = sample_json(c.sample, r.params);
      if (c.reason.empty()) {
        f["lhs"] = to_json(c.lhs);
        f["rhs"] = to_json(c.rhs);
        f["abs_err"] = num(c.abs_err);
      } else {
        f["reason"] = c.reason;
      }
      failed.push_back(std::move(f));
    }
    j["failed_samples"] = std::move(failed);
  }
  return j;
}

ordered_json table_row_json(const SpecialValueRecord& r) {
  ordered_json j;
  j["fn"] = fn_tag_name(r.fn_tag);
  j["argument"] = r.argument;
  j["arg_value"] = r.arg_value;
  j["closed_form"] = to_json(r.closed_form);
  if (r.reason.empty()) {
    j["quadrature"] = to_json(r.direct);
  } else {
    j["quadrature"] = nullptr;
    j["reason"] = r.reason;
  }
  j["abs_err"] = num(r.abs_err);
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  return j;
}

ordered_json table_summary(const std::vector<SpecialValueRecord>& rows) {
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.pass ? 1 : 0;
  return {{"total", rows.size()}, {"passed", passed}, {"failed", rows.size() - passed}};
}

bool all_pass(const std::vector<SpecialValueRecord>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SpecialValueRecord& r) { return r.pass; });
}

std::string function_title(FnTag tag) { return tag == FnTag::J ? "Special values of J(x)" : "Special values of T(x)"; }

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return Format::markdown;
}

// Maps library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const EvaluationError& e) {
    err << "evaluation failed: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

struct EvalRequest {
  std::string fn;
  std::string x;
  std::string u;
  std::string v;
  std::optional<double> tol;
  std::string format = "text";
  bool cross_check = false;
};

using EvalFn = std::function<cplx(cplx x, cplx u, cplx v, const HznConfig& cfg)>;

struct EvalEntry {
  bool needs_uv = false;
  bool quadrature = true;
  EvalFn fn;
};

const std::map<std::string, EvalEntry>& eval_table() {
  static const std::map<std::string, EvalEntry> table{
      {"Fuv", {true, true, [](cplx x, cplx u, cplx v, const HznConfig& c) { return hzn_eval({x, u, v}, c); }}},
      {"frakF", {true, true, [](cplx x, cplx u, cplx v, const HznConfig& c) { return frak_f({x, u, v}, c); }}},
      {"F", {false, true, [](cplx x, cplx, cplx, const HznConfig& c) { return herglotz_eval(x, c.quad); }}},
      {"J", {false, true, [](cplx x, cplx, cplx, const HznConfig& c) { return j_integral(x, c.quad); }}},
      {"T", {false, true, [](cplx x, cplx, cplx, const HznConfig& c) { return t_integral(x, c.quad); }}},
      {"calJ", {false, true, [](cplx x, cplx, cplx, const HznConfig& c) { return cal_j(x, c.quad); }}},
      {"calT", {false, true, [](cplx x, cplx, cplx, const HznConfig& c) { return cal_t(x, c.quad); }}},
      {"dilog", {false, false, [](cplx x, cplx, cplx, const HznConfig&) { return dilog(x); }}},
      {"digamma", {false, false, [](cplx x, cplx, cplx, const HznConfig&) { return digamma(x); }}},
  };
  return table;
}

int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err) {
  const auto& table = eval_table();
  const auto it = table.find(req.fn);
  if (it == table.end()) {
    err << "unknown function '" << req.fn << "'\n";
    return kUsage;
  }
  const EvalEntry& entry = it->second;
  if (entry.needs_uv && (req.u.empty() || req.v.empty())) {
    err << req.fn << " needs --u and --v\n";
    return kUsage;
  }
  if (!entry.needs_uv && (!req.u.empty() || !req.v.empty())) {
    err << req.fn << " takes only --x\n";
    return kUsage;
  }
  return guarded(err, [&] {
    const cplx x = parse_complex(req.x);
    const cplx u = entry.needs_uv ? parse_complex(req.u) : cplx{};
    const cplx v = entry.needs_uv ? parse_complex(req.v) : cplx{};
    HznConfig cfg;
    if (req.tol) {
      if (!(*req.tol > 0.0)) throw DomainError("tolerance must be positive");
      cfg.quad.target_abs_tol = *req.tol;
      cfg.series_tol = std::min(cfg.series_tol, *req.tol);
    }
    cfg.cross_check = req.cross_check;
    const cplx value = entry.fn(x, u, v, cfg);

    // A posteriori estimate: repeat with a tolerance two orders tighter.
    std::optional<double> estimate;
    if (entry.quadrature) {
      HznConfig fine = cfg;
      fine.quad.target_abs_tol = std::max(cfg.quad.target_abs_tol * 1e-2, 1e-15);
      fine.quad.max_level = std::min(cfg.quad.max_level + 1, 14);
      try {
        estimate = std::abs(entry.fn(x, u, v, fine) - value);
      } catch (const ConvergenceError&) {
        // The coarse value stands; no estimate.
      }
    }

    if (req.format == "json") {
      ordered_json j;
      j["fn"] = req.fn;
      j["x"] = to_json(x);
      if (entry.needs_uv) {
        j["u"] = to_json(u);
        j["v"] = to_json(v);
      }
      j["value"] = to_json(value);
      j["error_estimate"] = estimate ? ordered_json(*estimate) : ordered_json(nullptr);
      out << j.dump(2) << '\n';
    } else {
      out << display_complex(value) << '\n';
      if (estimate) out << "error estimate: " << sci(*estimate) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

struct VerifyRequest {
  std::vector<std::string> ids;
  int samples = 100;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  std::string format = "json";
  bool no_run_id = false;
};

int cmd_verify(const VerifyRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Report report = run_all(req.seed, req.samples, req.tol, req.ids);
    switch (parse_format(req.format)) {
      case Format::json: {
        std::optional<std::string> id;
        if (!req.no_run_id) id = make_run_id(req.seed, req.samples, req.tol, req.ids);
        out << report_json(report, nullptr, id);
        break;
      }
      case Format::csv: out << report_csv(report); break;
      case Format::markdown: out << report_markdown(report); break;
    }
    return static_cast<int>(report.summary.failed == 0 ? kOk : kVerificationFailed);
  });
}

struct TablesRequest {
  std::string which = "all";
  std::string format = "markdown";
  std::optional<double> tol;
};

int cmd_tables(const TablesRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    TableConfig cfg;
    if (req.tol) {
      if (!(*req.tol > 0.0)) throw DomainError("tolerance must be positive");
      cfg.tol = *req.tol;
    }
    const int which = req.which == "1" ? 1 : req.which == "2" ? 2 : 0;
    const auto rows = verify_tables(which, cfg);
    switch (parse_format(req.format)) {
      case Format::json: out << tables_json(rows); break;
      case Format::csv: out << tables_csv(rows); break;
      case Format::markdown: out << tables_markdown(rows); break;
    }
    for (const auto& r : rows) {
      if (!r.reason.empty()) err << "row " << fn_tag_name(r.fn_tag) << "(" << r.argument << ") failed: " << r.reason << '\n';
    }
    return static_cast<int>(all_pass(rows) ? kOk : kVerificationFailed);
  });
}

struct ReportRequest {
  std::string out_path;
  int samples = 100;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  bool no_run_id = false;
};

int cmd_report(const ReportRequest& req, std::ostream& out, std::ostream& err) {
  std::ofstream file(req.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "cannot open '" << req.out_path << "' for writing\n";
    return kIo;
  }
  return guarded(err, [&] {
    const Report report = run_all(req.seed, req.samples, req.tol);
    TableConfig tcfg;
    if (req.tol) tcfg.tol = *req.tol;
    const auto rows = verify_tables(0, tcfg);
    std::optional<std::string> id;
    if (!req.no_run_id) id = make_run_id(req.seed, req.samples, req.tol, {});
    file << report_json(report, &rows, id);
    file.close();
    if (!file) {
      err << "write to '" << req.out_path << "' failed\n";
      return static_cast<int>(kIo);
    }
    const bool ok = report.summary.failed == 0 && all_pass(rows);
    out << "identities: " << report.summary.passed << "/" << report.summary.total << " passed; tables: "
        << table_summary(rows)["passed"].get<std::size_t>() << "/" << rows.size() << " passed\n";
    return static_cast<int>(ok ? kOk : kVerificationFailed);
  });
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw DomainError("empty complex literal");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  s.remove_suffix(1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im = split == std::string_view::npos ? s : s.substr(split);
  double im_value = 0.0;
  if (im.empty() || im == "+") {
    im_value = 1.0;
  } else if (im == "-") {
    im_value = -1.0;
  } else {
    im_value = parse_real(im, text);
  }
  return {re.empty() ? 0.0 : parse_real(re, text), im_value};
}

std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return shortest(z.real());
  const std::string im = shortest(std::abs(z.imag()));
  return shortest(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("HZN_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view s(raw);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("HZN_TOL must be a positive number, got '" + std::string(s) + "'");
  }
  return v;
}

std::string make_run_id(std::uint64_t seed, int samples, std::optional<double> tol,
                        const std::vector<std::string>& ids) {
  std::string key = std::string(kSchemaTag) + "|" + std::to_string(seed) + "|" + std::to_string(samples) + "|" +
                    (tol ? shortest(*tol) : "default");
  for (const auto& id : ids) key += "|" + id;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string report_json(const Report& report, const std::vector<SpecialValueRecord>* tables,
                        const std::optional<std::string>& run_id) {
  ordered_json j;
  if (run_id) j["run_id"] = *run_id;
  j["seed"] = report.seed;
  j["tolerance"] = report.tolerance;
  j["tolerance_overridden"] = report.tolerance_overridden;
  j["samples_per_identity"] = report.samples_per_identity;
  ordered_json ids = ordered_json::array();
  for (const auto& r : report.identities) ids.push_back(identity_json(r));
  j["identities"] = std::move(ids);
  if (tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : *tables) rows.push_back(table_row_json(r));
    j["tables"] = std::move(rows);
  }
  j["summary"] = {{"total", report.summary.total}, {"passed", report.summary.passed}, {"failed", report.summary.failed}};
  if (tables) j["tables_summary"] = table_summary(*tables);
  return j.dump(2) + "\n";
}

std::string report_csv(const Report& report) {
  std::ostringstream os;
  os << "id,kind,tol,samples,rejected_samples,max_abs_err,mean_abs_err,failures,pass\n";
  for (const auto& r : report.identities) {
    os << r.id << ',' << (r.kind == IdentityKind::limit ? "limit" : "exact") << ',' << shortest(r.tol) << ','
       << r.samples << ',' << r.rejected_samples << ',' << fixed17(r.max_abs_err) << ',' << fixed17(r.mean_abs_err)
       << ',' << r.failures << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string report_markdown(const Report& report) {
  std::ostringstream os;
  os << "| id | kind | samples | rejected | max abs err | mean abs err | pass |\n";
  os << "|---|---|---:|---:|---:|---:|---|\n";
  for (const auto& r : report.identities) {
    os << "| " << r.id << " | " << (r.kind == IdentityKind::limit ? "limit" : "exact") << " | " << r.samples << " | "
       << r.rejected_samples << " | " << sci(r.max_abs_err) << " | " << sci(r.mean_abs_err) << " | "
       << (r.pass ? "yes" : "**no**") << " |\n";
  }
  os << "\n" << report.summary.passed << " of " << report.summary.total << " identities passed.\n";
  return os.str();
}

std::string tables_json(const std::vector<SpecialValueRecord>& rows) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(table_row_json(r));
  j["tables"] = std::move(arr);
  j["summary"] = table_summary(rows);
  return j.dump(2) + "\n";
}

std::string tables_csv(const std::vector<SpecialValueRecord>& rows) {
  std::ostringstream os;
  os << "fn,arg_display,arg_value,closed_form,quadrature,abs_err\n";
  for (const auto& r : rows) {
    os << fn_tag_name(r.fn_tag) << ',' << r.argument << ',' << fixed17(r.arg_value) << ','
       << fixed17(r.closed_form.real()) << ',' << (r.reason.empty() ? fixed17(r.direct.real()) : "nan") << ','
       << (r.reason.empty() ? sci(r.abs_err) : "nan") << '\n';
  }
  return os.str();
}

std::string tables_markdown(const std::vector<SpecialValueRecord>& rows) {
  std::ostringstream os;
  std::optional<FnTag> current;
  for (const auto& r : rows) {
    if (!current || *current != r.fn_tag) {
      if (current) os << '\n';
      current = r.fn_tag;
      const std::string f = fn_tag_name(r.fn_tag);
      os << "**" << function_title(r.fn_tag) << "**\n\n";
      os << "| x | value of x | " << f << "(x) closed form | " << f << "(x) quadrature | abs err |\n";
      os << "|---|---:|---:|---:|---:|\n";
    }
    os << "| " << r.argument << " | " << fixed17(r.arg_value) << " | " << fixed17(r.closed_form.real()) << " | "
       << (r.reason.empty() ? fixed17(r.direct.real()) : "failed") << " | "
       << (r.reason.empty() ? sci(r.abs_err) : "n/a") << " |\n";
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and check Herglotz-type functions and their functional equations", "hzn"};
  app.require_subcommand(1);

  std::optional<double> env_tol;
  try {
    env_tol = env_tolerance();
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  EvalRequest eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one function at a point");
  eval_cmd->add_option("--fn", eval.fn, "Fuv, F, J, T, calJ, calT, frakF, dilog, digamma")->required();
  eval_cmd->add_option("--x", eval.x, "Argument, e.g. 1.5-0.25i")->required();
  eval_cmd->add_option("--u", eval.u, "First parameter of Fuv and frakF");
  eval_cmd->add_option("--v", eval.v, "Second parameter of Fuv and frakF");
  eval_cmd->add_option("--tol", eval.tol, "Quadrature target tolerance");
  eval_cmd->add_option("--format", eval.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  eval_cmd->add_flag("--cross-check", eval.cross_check, "Require integral and series to agree where both apply");

  VerifyRequest verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check registered identities at seeded samples");
  verify_cmd->add_option("--ids", verify.ids, "Comma-separated identity ids (default: all)")->delimiter(',');
  verify_cmd->add_option("--samples", verify.samples, "Samples per identity")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Sampler seed");
  verify_cmd->add_option("--tol", verify.tol, "Override every identity's tolerance");
  verify_cmd->add_option("--format", verify.format, "json, csv or md")
      ->check(CLI::IsMember({"json", "csv", "md", "markdown"}));
  verify_cmd->add_flag("--no-run-id", verify.no_run_id, "Omit run_id from JSON output");

  TablesRequest tables;
  auto* tables_cmd = app.add_subcommand("tables", "Reproduce the special-value tables");
  tables_cmd->add_option("--which", tables.which, "1, 2 or all")->check(CLI::IsMember({"1", "2", "all"}));
  tables_cmd->add_option("--format", tables.format, "json, csv or md")
      ->check(CLI::IsMember({"json", "csv", "md", "markdown"}));
  tables_cmd->add_option("--tol", tables.tol, "Row threshold on abs_err");

  ReportRequest report;
  auto* report_cmd = app.add_subcommand("report", "Run verification and tables, write one JSON document");
  report_cmd->add_option("--out", report.out_path, "Output path")->required();
  report_cmd->add_option("--samples", report.samples, "Samples per identity")->check(CLI::PositiveNumber);
  report_cmd->add_option("--seed", report.seed, "Sampler seed");
  report_cmd->add_option("--tol", report.tol, "Override every identity's tolerance");
  report_cmd->add_flag("--no-run-id", report.no_run_id, "Omit run_id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  // Flags win over the environment.
  if (!eval.tol) eval.tol = env_tol;
  if (!verify.tol) verify.tol = env_tol;
  if (!tables.tol) tables.tol = env_tol;
  if (!report.tol) report.tol = env_tol;

  if (eval_cmd->parsed()) return cmd_eval(eval, out, err);
  if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
  if (tables_cmd->parsed()) return cmd_tables(tables, out, err);
  return cmd_report(report, out, err);
}

}  // namespace hzn::cli
