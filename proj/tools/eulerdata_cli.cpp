// Command-line driver: single-case computation, the built-in regression
// suite, and a benchmark mode comparing the two pivot strategies.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "eulerdata/cases.hpp"

namespace {

using namespace eulerdata;

constexpr int kExitOk = 0;
constexpr int kExitGoldenMismatch = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitEngineAbort = 3;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  return out;
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << text;
}

int cmd_compute(const CaseConfig& config, const std::string& format, const std::string& out) {
  RunReport report = run_case(config);
  write_out(emit_report(report, format), out);
  return report.complete() ? kExitOk : kExitEngineAbort;
}

int cmd_suite(const SuiteOptions& opts, const std::string& format, const std::string& out) {
  std::vector<CaseResult> results = run_builtin_suite(opts);
  bool mismatch = false, abort = false;
  std::ostringstream os;
  if (format == "structured") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) {
      ordered_json j;
      j["id"] = r.id;
      j["pass"] = r.pass;
      j["detail"] = r.detail;
      j["millis"] = r.millis;
      j["report"] = ordered_json::parse(emit_report(r.report, "structured"));
      arr.push_back(std::move(j));
      mismatch |= !r.pass;
      abort |= r.aborted;
    }
    os << arr.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  (" << r.millis << " ms, d<="
         << r.report.degrees.size() << ")";
      if (!r.pass) os << "  " << r.detail;
      os << "\n";
      for (const auto& e : r.report.degrees)
        os << "        d=" << e.d << "  K=" << e.K.str() << "  n=" << e.n.str() << "\n";
      mismatch |= !r.pass;
      abort |= r.aborted;
    }
    os << (mismatch ? "suite: FAIL" : "suite: PASS") << " (" << results.size() << " cases)\n";
  }
  write_out(os.str(), out);
  if (abort) return kExitEngineAbort;
  return mismatch ? kExitGoldenMismatch : kExitOk;
}

int cmd_bench(const std::string& case_id, int repeat, int max_d, const std::string& out) {
  const BuiltinCase* bc = find_builtin(case_id);
  if (!bc) throw ConfigError("bench: unknown case '" + case_id + "'");
  std::ostringstream os;
  os << "bench " << bc->id << " (" << bc->title << "), repeat=" << repeat << "\n";
  for (PivotStrategy strategy : {PivotStrategy::kMinTerms, PivotStrategy::kFirstNonzero}) {
    CaseConfig config = bc->config;
    if (max_d > 0) config.dmax = max_d;
    config.pivot = strategy;
    os << "pivot=" << (strategy == PivotStrategy::kMinTerms ? "min-terms" : "first") << "\n";
    for (int rep = 0; rep < repeat; ++rep) {
      RunReport report = run_case(config);
      if (!report.complete()) {
        os << "  run " << rep << ": ABORTED: " << report.failure_message << "\n";
        write_out(os.str(), out);
        return kExitEngineAbort;
      }
      os << "  run " << rep << ":";
      for (const auto& e : report.degrees)
        os << "  d=" << e.d << ": " << e.millis << " ms"
           << " (peak eq terms " << e.stats.peak_equation_terms << ", peak coeff terms "
           << e.stats.peak_coeff_terms << ")";
      os << "\n";
    }
  }
  write_out(os.str(), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Euler data / intersection number engine for concavex "
               "split bundles over CP^n"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "compute one case");
  int n = 0;
  std::string convex_text, concave_text, omega_text = "euler", dmax_unused;
  int dmax = 1;
  std::string spec_text = "i^2+7*i+1", sdiff_text = "0", pivot_text = "min-terms";
  bool check = false, emit_q = false, symbolic = false;
  std::string name = "case", config_file, format = "human", out_path;
  compute->add_option("--n", n, "dimension of CP^n");
  compute->add_option("--convex", convex_text, "convex splitting entries, e.g. \"2,4\"");
  compute->add_option("--concave", concave_text, "concave splitting entries, e.g. \"1,1\"");
  compute->add_option("--omega", omega_text, "euler|chern")->check(CLI::IsMember({"euler", "chern"}));
  compute->add_option("--dmax", dmax, "maximal degree");
  compute->add_option("--spec", spec_text, "specialization polynomial s(i)");
  compute->add_option("--sdiff", sdiff_text, "s_diff: affine in d or table:v1,v2,...");
  compute->add_option("--pivot", pivot_text, "first|min-terms")
      ->check(CLI::IsMember({"first", "min-terms"}));
  compute->add_flag("--check", check, "verify consistency of the linear systems");
  compute->add_flag("--emit-q", emit_q, "include Q_d term lists in the report");
  compute->add_flag("--symbolic-solve", symbolic, "solve the systems over RatFunc(u,x) directly");
  compute->add_option("--name", name, "case label");
  compute->add_option("--config", config_file, "JSON config file (exclusive with the flags above)");
  compute->add_option("--format", format, "human|structured")
      ->check(CLI::IsMember({"human", "structured"}));
  compute->add_option("--out", out_path, "write the report to a file");

  // suite
  auto* suite = app.add_subcommand("suite", "replay the built-in regression catalog");
  std::string filter_text;
  int max_d = 0, jobs = 1;
  std::string suite_format = "human", suite_out;
  suite->add_option("--filter", filter_text, "comma-separated case ids (default: all)");
  suite->add_option("--max-d", max_d, "override the per-case depth caps");
  suite->add_option("--jobs", jobs, "worker threads for independent cases");
  suite->add_option("--format", suite_format, "human|structured")
      ->check(CLI::IsMember({"human", "structured"}));
  suite->add_option("--out", suite_out, "write the suite report to a file");

  // bench
  auto* bench = app.add_subcommand("bench", "rerun a case under both pivot strategies");
  std::string bench_case = "case1";
  int repeat = 1, bench_max_d = 0;
  std::string bench_out;
  bench->add_option("--case", bench_case, "catalog case id");
  bench->add_option("--repeat", repeat, "repetitions per strategy");
  bench->add_option("--max-d", bench_max_d, "override the depth cap");
  bench->add_option("--out", bench_out, "write the bench report to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) {
      CaseConfig config;
      if (!config_file.empty()) {
        std::ifstream f(config_file);
        if (!f) throw ConfigError("cannot open config file '" + config_file + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        config = parse_config(ss.str());
      } else {
        config.name = name;
        config.n = n;
        config.convex = parse_int_list(convex_text);
        config.concave = parse_int_list(concave_text);
        config.omega = omega_text == "chern" ? OmegaKind::kChern : OmegaKind::kEuler;
        config.dmax = dmax;
        config.spec_text = spec_text;
        config.sdiff_text = sdiff_text;
        config.pivot = pivot_text == "first" ? PivotStrategy::kFirstNonzero
                                             : PivotStrategy::kMinTerms;
        config.check = check;
        config.emit_q = emit_q;
        config.symbolic_solve = symbolic;
        config.validate();
      }
      return cmd_compute(config, format, out_path);
    }
    if (suite->parsed()) {
      SuiteOptions opts;
      std::stringstream ss(filter_text);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) opts.filter.push_back(item);
      opts.max_d = max_d;
      opts.jobs = jobs;
      return cmd_suite(opts, suite_format, suite_out);
    }
    if (bench->parsed()) return cmd_bench(bench_case, repeat, bench_max_d, bench_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngineAbort;
  }
  return kExitOk;
}
