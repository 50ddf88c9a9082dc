// einstab command-line front end. Talks to the library only through einstab.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "einstab/einstab.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct CliError {
  int code;
  std::string message;
};

int exit_code(einstab_status s) {
  switch (s) {
    case EINSTAB_OK: return kExitOk;
    case EINSTAB_VERIFY: return kExitMismatch;
    case EINSTAB_INVALID_ARGUMENT:
    case EINSTAB_RANGE:
    case EINSTAB_PARSE: return kExitUsage;
    default: return kExitFailure;
  }
}

void check(einstab_status s) {
  if (s != EINSTAB_OK) throw CliError{exit_code(s), einstab_last_error()};
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { einstab_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

struct EntryHandle {
  einstab_entry* p = nullptr;
  ~EntryHandle() { einstab_entry_free(p); }
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Exact values arrive as "p/q" strings and are printed verbatim.
std::string num(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return g17(v.get<double>());
}

std::string vec(const json& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out + ")";
}

void print_record_table(const json& r, std::ostream& out) {
  out << r["label"].get<std::string>() << "  [" << r["family"].get<std::string>();
  if (r["n"].get<int>() > 0) out << ", n=" << r["n"].get<int>();
  out << "]\n";
  out << "  critical point   " << vec(r["critical_point"]) << "\n";
  out << "  gradient norm    " << num(r["gradient_norm"]) << "\n";
  out << "  classification   " << r["classification"].get<std::string>() << "\n";
  out << "  eigenvalues      " << vec(r["eigenvalues"]) << "\n";
  for (const auto& k : r["kernel"]) out << "  kernel vector    " << vec(k) << "\n";
  for (const auto& p : r["probes"]) {
    out << "  direction        " << vec(p["direction"]) << "  (" << p["mode"].get<std::string>() << ")\n";
    out << "    S1             " << num(p["s1"]) << "\n";
    out << "    S2             " << num(p["s2"]) << "\n";
    out << "    S3             " << num(p["s3"]) << "\n";
    out << "    expected S3    " << num(r["expected_s3"]) << "  match: " << num(p["matches_expected"]) << "\n";
    out << "    verdict        " << p["verdict"].get<std::string>() << "\n";
    if (!p["witness"].is_null()) {
      const auto& w = p["witness"];
      out << "    witness        " << vec(w["point"]) << "  t=" << num(w["t"]) << "\n";
      out << "    improvement    " << num(w["improvement"]) << "\n";
    }
  }
  out << "  verdict          " << r["verdict"].get<std::string>() << "\n";
}

// A record passes when its first probe says NotLocalMax and every probe
// with an expected value matches it.
bool record_ok(const json& r) {
  if (r["verdict"] != "NotLocalMax") return false;
  for (const auto& p : r["probes"])
    if (p["matches_expected"] == false) return false;
  return true;
}

// "3..10", "5" or "" (empty). lo > hi is an empty range too.
void parse_range(const std::string& text, std::set<int>& into) {
  if (text.empty()) return;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      into.insert(n);
      return;
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    for (int n = lo; n <= hi; ++n) into.insert(n);
  } catch (const std::logic_error&) {
    throw CliError{kExitUsage, "malformed range '" + text + "' (expected LO..HI or N)"};
  }
}

struct ProbeFlags {
  std::string mode = "auto";
  double kernel_tol = 0;
  double tol_low = 0;
  double tol_high = 0;
  double witness_eps = 0;
  std::string format = "table";
};

void add_probe_flags(CLI::App* cmd, ProbeFlags& f) {
  cmd->add_option("--mode", f.mode, "exact, float or auto")->check(CLI::IsMember({"exact", "float", "auto"}));
  cmd->add_option("--kernel-tol", f.kernel_tol, "Hessian kernel band, relative to max |eigenvalue|")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol_low, "verdict tolerance for |S1|, |S2| (relative)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-high", f.tol_high, "verdict threshold for |S3| (relative)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--witness-eps", f.witness_eps, "initial witness offset")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", f.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

einstab_options to_options(const ProbeFlags& f) {
  einstab_options o;
  einstab_default_options(&o);
  o.mode = f.mode == "exact" ? EINSTAB_MODE_EXACT : f.mode == "float" ? EINSTAB_MODE_FLOAT : EINSTAB_MODE_AUTO;
  if (f.kernel_tol > 0) o.kernel_tol = f.kernel_tol;
  if (f.tol_low > 0) o.tol_low = f.tol_low;
  if (f.tol_high > 0) o.tol_high = f.tol_high;
  if (f.witness_eps > 0) o.witness_eps = f.witness_eps;
  return o;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliError{kExitFailure, "cannot write '" + path + "'"};
  out << text;
  if (!out) throw CliError{kExitFailure, "write to '" + path + "' failed"};
}

int cmd_list(const std::string& family, const std::string& format) {
  LibString s;
  check(einstab_families_json(family.empty() ? nullptr : family.c_str(), &s.p));
  const json list = json::parse(s.str());
  if (format == "json") {
    std::cout << list.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& f : list) {
    std::cout << f["name"].get<std::string>() << "  ";
    if (f["uses_n"].get<bool>())
      std::cout << "n >= " << f["min_n"].get<int>();
    else
      std::cout << "no parameter";
    std::cout << "  " << f["title"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_probe(const std::string& family, int n, const ProbeFlags& flags) {
  EntryHandle entry;
  check(einstab_entry_build(family.c_str(), n, &entry.p));
  const einstab_options o = to_options(flags);
  LibString s;
  check(einstab_entry_report_json(entry.p, &o, &s.p));
  const json record = json::parse(s.str());
  if (flags.format == "json")
    std::cout << record.dump(2) << "\n";
  else
    print_record_table(record, std::cout);
  return record_ok(record) ? kExitOk : kExitMismatch;
}

int cmd_verify(const std::string& algebra, const std::string& format) {
  LibString s;
  const einstab_status st = einstab_verify_constants_json(algebra.c_str(), &s.p);
  if (st != EINSTAB_OK && st != EINSTAB_VERIFY) check(st);
  const json r = json::parse(s.str());
  if (format == "json") {
    std::cout << r.dump(2) << "\n";
  } else {
    std::cout << "algebra " << algebra << "\n";
    std::cout << "  dims computed   " << vec(r["dims"]) << "\n";
    std::cout << "  dims expected   " << vec(r["expected_dims"]) << "\n";
    auto table = [](const json& rows) {
      for (const auto& t : rows)
        std::cout << "    [" << t["i"].get<int>() + 1 << t["j"].get<int>() + 1 << t["k"].get<int>() + 1
                  << "] = " << num(t["value"]) << "\n";
    };
    std::cout << "  computed\n";
    table(r["computed"]);
    std::cout << "  expected\n";
    table(r["expected"]);
    std::cout << "  max deviation   " << num(r["max_deviation"]) << "\n";
  }
  if (st == EINSTAB_VERIFY) std::cerr << "einstab: " << einstab_last_error() << "\n";
  return exit_code(st);
}

struct ReportFlags {
  std::vector<std::string> su;
  std::vector<std::string> flag;
  std::vector<std::string> sp;
  bool no_e6 = false;
  std::string out;
  ProbeFlags probe;
};

int cmd_report(const ReportFlags& f) {
  std::set<int> su, flag, sp;
  const bool defaults = f.su.empty() && f.flag.empty() && f.sp.empty();
  if (defaults) {
    parse_range("3..10", su);
    parse_range("4..8", flag);
    parse_range("3..6", sp);
  }
  for (const auto& r : f.su) parse_range(r, su);
  for (const auto& r : f.flag) parse_range(r, flag);
  for (const auto& r : f.sp) parse_range(r, sp);
  const std::vector<int> su_v(su.begin(), su.end()), flag_v(flag.begin(), flag.end()), sp_v(sp.begin(), sp.end());
  einstab_batch_request req{su_v.data(), su_v.size(), flag_v.data(), flag_v.size(), sp_v.data(), sp_v.size(),
                            (defaults && !f.no_e6) ? 1 : 0};
  const einstab_options o = to_options(f.probe);
  LibString s;
  check(einstab_batch_report_json(&req, &o, &s.p));
  const json report = json::parse(s.str());
  bool ok = true;
  for (const auto& r : report["records"]) ok = ok && record_ok(r);
  if (f.probe.format == "json") {
    write_output(report.dump(2) + "\n", f.out);
  } else {
    std::ostringstream text;
    for (const auto& r : report["records"]) print_record_table(r, text);
    text << report["count"].get<std::size_t>() << " records, all NotLocalMax: "
         << (report["all_not_local_max"].get<bool>() ? "yes" : "no") << "\n";
    write_output(text.str(), f.out);
  }
  if (!f.out.empty() && f.out != "-")
    std::cerr << "wrote " << report["count"].get<std::size_t>() << " records to " << f.out << "\n";
  return ok ? kExitOk : kExitMismatch;
}

int cmd_custom(const std::string& path, bool search, int eliminate, const ProbeFlags& flags) {
  const einstab_options o = to_options(flags);
  LibString s;
  check(einstab_custom_report_json(path.c_str(), search ? 1 : 0, eliminate, &o, &s.p));
  const json report = json::parse(s.str());
  if (report["count"].get<std::size_t>() == 0) {
    std::cout << "no critical points found\n";
    return kExitOk;
  }
  if (flags.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& r : report["records"]) print_record_table(r, std::cout);
    const bool probed = std::any_of(report["records"].begin(), report["records"].end(),
                                    [](const json& r) { return !r["probes"].empty(); });
    if (!probed) std::cout << "no degenerate critical points found\n";
  }
  for (const auto& r : report["records"])
    for (const auto& p : r["probes"])
      if (p["matches_expected"] == false) return kExitMismatch;
  return kExitOk;
}

struct FlowFlags {
  std::string family;
  int n = 0;
  std::string file;
  std::vector<double> start;
  double offset = 1e-2;
  double step = 1e-3;
  long max_steps = 100000;
  std::string out;
};

int cmd_flow(const FlowFlags& f) {
  EntryHandle entry;
  if (!f.file.empty())
    check(einstab_entry_load(f.file.c_str(), &entry.p));
  else if (!f.family.empty())
    check(einstab_entry_build(f.family.c_str(), f.n, &entry.p));
  else
    throw CliError{kExitUsage, "flow needs --family or --file"};
  LibString s;
  check(einstab_flow_csv(entry.p, f.start.empty() ? nullptr : f.start.data(), f.start.size(), f.step, f.max_steps,
                         f.offset, &s.p));
  write_output(s.str(), f.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"einstab: inflection certificates for homogeneous Einstein metrics"};
  app.set_version_flag("--version", std::string(einstab_version()));
  app.require_subcommand(1);

  std::string list_family, list_format = "table";
  auto* list = app.add_subcommand("list", "families and their parameter ranges");
  list->add_option("--family", list_family, "show a single family");
  list->add_option("--format", list_format, "json or table")->check(CLI::IsMember({"json", "table"}));

  std::string probe_family;
  int probe_n = 0;
  ProbeFlags probe_flags;
  auto* probe = app.add_subcommand("probe", "classify a catalog entry and probe it along its kernel curve");
  probe->add_option("--family", probe_family, "family name (see list)")->required();
  probe->add_option("--n", probe_n, "family parameter");
  add_probe_flags(probe, probe_flags);

  std::string algebra, verify_format = "table";
  auto* verify = app.add_subcommand("verify-constants", "brute-force structural constants against catalog data");
  verify->add_option("--algebra", algebra, "su2, su3 or so8")->required();
  verify->add_option("--format", verify_format, "json or table")->check(CLI::IsMember({"json", "table"}));

  ReportFlags report_flags;
  report_flags.probe.format = "json";
  auto* report = app.add_subcommand("report", "batch reproduction over parameter ranges");
  report->add_option("--range-su", report_flags.su, "SU(n) range LO..HI (repeatable)")->allow_extra_args(false);
  report->add_option("--range-flag", report_flags.flag, "SO(2n)/T^n range (repeatable)")->allow_extra_args(false);
  report->add_option("--range-sp", report_flags.sp, "SU(2n)/Sp(n) range (repeatable)")->allow_extra_args(false);
  report->add_flag("--no-e6", report_flags.no_e6, "leave out E6/SU(2)xSO(6) from the default set");
  report->add_option("--out", report_flags.out, "output file (default stdout)");
  add_probe_flags(report, report_flags.probe);

  std::string custom_file;
  bool custom_search = false;
  int custom_eliminate = -1;
  ProbeFlags custom_flags;
  auto* custom = app.add_subcommand("custom", "critical points of a space file, with degenerate ones probed");
  custom->add_option("--file", custom_file, "space definition (JSON)")->required();
  custom->add_flag("--search", custom_search, "multi-start search even when the file names a critical point");
  custom->add_option("--eliminate", custom_eliminate, "summand removed by the volume constraint");
  add_probe_flags(custom, custom_flags);

  FlowFlags flow_flags;
  auto* flow = app.add_subcommand("flow", "gradient ascent of scal on the slice, as CSV");
  flow->add_option("--family", flow_flags.family, "family name");
  flow->add_option("--n", flow_flags.n, "family parameter");
  flow->add_option("--file", flow_flags.file, "custom space file instead of a family");
  flow->add_option("--start", flow_flags.start, "start point in chart coordinates");
  flow->add_option("--offset", flow_flags.offset, "offset along the kernel direction when --start is absent");
  flow->add_option("--step", flow_flags.step, "RK4 step");
  flow->add_option("--max-steps", flow_flags.max_steps, "step budget");
  flow->add_option("--out", flow_flags.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*list) return cmd_list(list_family, list_format);
    if (*probe) return cmd_probe(probe_family, probe_n, probe_flags);
    if (*verify) return cmd_verify(algebra, verify_format);
    if (*report) return cmd_report(report_flags);
    if (*custom) return cmd_custom(custom_file, custom_search, custom_eliminate, custom_flags);
    if (*flow) return cmd_flow(flow_flags);
  } catch (const CliError& e) {
    std::cerr << "einstab: " << e.message << "\n";
    if (e.code == kExitUsage) std::cerr << "run with --help for usage\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "einstab: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
