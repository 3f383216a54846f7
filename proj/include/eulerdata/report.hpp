#ifndef EULERDATA_REPORT_HPP
#define EULERDATA_REPORT_HPP

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eulerdata/invariants.hpp"
#include "eulerdata/version.hpp"

namespace eulerdata {

using ordered_json = nlohmann::ordered_json;

/// A bundle computation request: everything needed to reproduce one run.
struct CaseConfig {
  std::string name = "case";
  int n = 1;
  std::vector<int> convex;
  std::vector<int> concave;
  OmegaKind omega = OmegaKind::kEuler;
  std::string sdiff_text = "0";
  int dmax = 1;
  std::string spec_text = "i^2+7*i+1";
  PivotStrategy pivot = PivotStrategy::kMinTerms;
  bool check = true;
  bool emit_q = false;
  bool symbolic_solve = false;

  BundleSpec bundle() const {
    BundleSpec b;
    b.n = n;
    b.convex = convex;
    b.concave = concave;
    return b;
  }

  Specialization specialization() const { return Specialization::parse(spec_text); }
  SDiff sdiff() const { return SDiff::parse(sdiff_text); }

  void validate() const {
    bundle().validate();
    if (dmax < 1) throw ConfigError("config: dmax must be >= 1");
    Specialization sp = specialization();
    sp.validate(n);
    SDiff sd = sdiff();
    if (omega == OmegaKind::kEuler && !sd.is_zero())
      throw ConfigError("config: euler mode forces s_diff = 0");
    for (int d = 1; d <= dmax; ++d) sd.at(d);  // rejects negatives / short tables
  }

  EngineCase engine_case() const {
    EngineCase ec;
    ec.bundle = bundle();
    ec.omega = OmegaClass::make(ec.bundle, omega);
    ec.spec = specialization();
    return ec;
  }

  EngineOptions engine_options() const {
    EngineOptions opts;
    opts.pivot = pivot;
    opts.check = check;
    opts.symbolic_solve = symbolic_solve;
    return opts;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["name"] = name;
    j["n"] = n;
    j["convex"] = convex;
    j["concave"] = concave;
    j["omega"] = omega_kind_name(omega);
    j["sdiff"] = sdiff_text;
    j["dmax"] = dmax;
    j["spec"] = spec_text;
    j["pivot"] = pivot == PivotStrategy::kMinTerms ? "min-terms" : "first";
    j["check"] = check;
    j["emit_q"] = emit_q;
    j["symbolic_solve"] = symbolic_solve;
    return j;
  }

  static CaseConfig from_json(const ordered_json& j) {
    CaseConfig c;
    c.name = j.value("name", std::string("case"));
    c.n = j.at("n").get<int>();
    c.convex = j.value("convex", std::vector<int>{});
    c.concave = j.value("concave", std::vector<int>{});
    std::string om = j.value("omega", std::string("euler"));
    if (om == "euler")
      c.omega = OmegaKind::kEuler;
    else if (om == "chern")
      c.omega = OmegaKind::kChern;
    else
      throw ConfigError("config: omega must be 'euler' or 'chern'");
    c.sdiff_text = j.value("sdiff", std::string("0"));
    c.dmax = j.value("dmax", 1);
    c.spec_text = j.value("spec", std::string("i^2+7*i+1"));
    std::string pv = j.value("pivot", std::string("min-terms"));
    if (pv == "min-terms")
      c.pivot = PivotStrategy::kMinTerms;
    else if (pv == "first")
      c.pivot = PivotStrategy::kFirstNonzero;
    else
      throw ConfigError("config: pivot must be 'min-terms' or 'first'");
    c.check = j.value("check", true);
    c.emit_q = j.value("emit_q", false);
    c.symbolic_solve = j.value("symbolic_solve", false);
    return c;
  }
};

/// Parses the structured (JSON) config document and validates every
/// invariant, naming the violated one on failure.
inline CaseConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  CaseConfig c = CaseConfig::from_json(j);
  c.validate();
  return c;
}

struct DegreeEntry {
  int d = 0;
  KdValue K;
  KdValue n;
  bool crosscheck_ok = false;
  Verdict verdict = Verdict::kUnchecked;
  long long millis = 0;
  SolveStats stats;
  ordered_json q_terms;  // present when emit_q
};

struct RunReport {
  CaseConfig config;
  std::string engine_version = kEngineVersion;
  std::vector<DegreeEntry> degrees;
  std::string failure_stage;    // empty when the run completed
  std::string failure_message;

  bool complete() const { return failure_stage.empty(); }
};

namespace report_detail {

inline ordered_json kd_to_json(const KdValue& v) {
  ordered_json j;
  j["num"] = v.value.str();
  j["x_exp"] = v.x_exp;
  return j;
}

inline KdValue kd_from_json(const ordered_json& j) {
  KdValue v;
  v.value = Rational::from_string(j.at("num").get<std::string>());
  v.x_exp = j.at("x_exp").get<int>();
  return v;
}

inline ordered_json q_terms_json(const MultiPoly& q) {
  ordered_json arr = ordered_json::array();
  for (const auto& [m, c] : q.terms()) {
    ordered_json term;
    ordered_json exps = ordered_json::array();
    for (std::size_t i = 0; i < q.table().size(); ++i) exps.push_back(m.exp(i));
    term["exp"] = exps;
    term["coeff"] = c.str();
    arr.push_back(term);
  }
  return arr;
}

}  // namespace report_detail

/// Runs one case end to end: Euler data, K_d, cross-check, instanton
/// numbers. On an engine abort the partial report carries the failure
/// stage; config errors propagate.
inline RunReport run_case(const CaseConfig& config) {
  config.validate();
  RunReport report;
  report.config = config;

  EngineCase ec = config.engine_case();
  EngineOptions opts = config.engine_options();
  SDiff sd = config.sdiff();
  const int n = config.n;

  using clock = std::chrono::steady_clock;
  std::vector<EulerDatum> data;
  std::vector<KdValue> klist;
  auto degree_start = clock::now();
  try {
    compute_euler_data(
        ec, config.dmax, opts,
        [&](const EulerDatum& datum, Verdict verdict, const SolveStats& stats) {
          DegreeEntry entry;
          entry.d = datum.degree;
          entry.verdict = verdict;
          entry.stats = stats;
          data.push_back(datum);

          MultiPoly J = nonequivariant_restriction(datum, n, ec.spec);
          int s = sd.at(datum.degree);
          entry.K = kd_from_qd(J, datum.degree, n, s);
          KdValue other = kd_crosscheck(J, datum.degree, n, s);
          entry.crosscheck_ok = entry.K == other;
          if (config.emit_q) entry.q_terms = report_detail::q_terms_json(datum.q);

          auto now = clock::now();
          entry.millis =
              std::chrono::duration_cast<std::chrono::milliseconds>(now - degree_start).count();
          degree_start = now;
          // keep klist and degrees in lockstep even if a later stage throws
          klist.push_back(entry.K);
          report.degrees.push_back(std::move(entry));
        });
  } catch (const EngineError& e) {
    report.failure_stage = e.stage;
    report.failure_message = e.what();
  } catch (const Error& e) {
    report.failure_stage = "engine";
    report.failure_message = e.what();
  }

  std::vector<KdValue> nlist = instanton_convert(klist);
  for (std::size_t i = 0; i < nlist.size(); ++i) report.degrees[i].n = nlist[i];
  return report;
}

/// Structured (machine-readable) or human-readable rendering.
inline std::string emit_report(const RunReport& report, const std::string& format) {
  if (format == "structured") {
    ordered_json j;
    j["config"] = report.config.to_json();
    j["engine_version"] = report.engine_version;
    j["status"] = report.complete() ? "complete" : "aborted";
    if (!report.complete()) {
      j["failure"]["stage"] = report.failure_stage;
      j["failure"]["message"] = report.failure_message;
    }
    ordered_json degrees = ordered_json::array();
    for (const auto& e : report.degrees) {
      ordered_json d;
      d["d"] = e.d;
      d["K"] = report_detail::kd_to_json(e.K);
      d["n"] = report_detail::kd_to_json(e.n);
      d["crosscheck"] = e.crosscheck_ok;
      d["verdict"] = verdict_name(e.verdict);
      d["millis"] = e.millis;
      if (!e.q_terms.is_null()) d["q"] = e.q_terms;
      degrees.push_back(std::move(d));
    }
    j["degrees"] = std::move(degrees);
    return j.dump(2) + "\n";
  }
  if (format != "human") throw ConfigError("emit_report: unknown format '" + format + "'");

  std::ostringstream os;
  const CaseConfig& c = report.config;
  os << "case: " << c.name << " (n=" << c.n << ", convex=[";
  for (std::size_t i = 0; i < c.convex.size(); ++i) os << (i ? "," : "") << c.convex[i];
  os << "], concave=[";
  for (std::size_t i = 0; i < c.concave.size(); ++i) os << (i ? "," : "") << c.concave[i];
  os << "], omega=" << omega_kind_name(c.omega) << ", s_diff=" << c.sdiff_text
     << ", dmax=" << c.dmax << ", spec=" << c.spec_text << ")\n";
  for (const auto& e : report.degrees) {
    os << "d = " << e.d << ": kd = " << e.K.str() << ", nd = " << e.n.str()
       << ", crosscheck = " << (e.crosscheck_ok ? "agree" : "DISAGREE")
       << ", verdict = " << verdict_name(e.verdict) << ", time = " << e.millis << " ms\n";
  }
  os << "kd = [";
  for (std::size_t i = 0; i < report.degrees.size(); ++i)
    os << (i ? ", " : "") << report.degrees[i].K.str();
  os << "]\ninstanton_list = [";
  for (std::size_t i = 0; i < report.degrees.size(); ++i)
    os << (i ? ", " : "") << report.degrees[i].n.str();
  os << "]\n";
  if (!report.complete())
    os << "ABORTED at stage '" << report.failure_stage << "': " << report.failure_message << "\n";
  return os.str();
}

/// Parses a structured report back; the emitted form round-trips.
inline RunReport parse_report(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  RunReport r;
  r.config = CaseConfig::from_json(j.at("config"));
  r.engine_version = j.at("engine_version").get<std::string>();
  if (j.at("status").get<std::string>() == "aborted") {
    r.failure_stage = j.at("failure").at("stage").get<std::string>();
    r.failure_message = j.at("failure").at("message").get<std::string>();
  }
  for (const auto& d : j.at("degrees")) {
    DegreeEntry e;
    e.d = d.at("d").get<int>();
    e.K = report_detail::kd_from_json(d.at("K"));
    e.n = report_detail::kd_from_json(d.at("n"));
    e.crosscheck_ok = d.at("crosscheck").get<bool>();
    std::string v = d.at("verdict").get<std::string>();
    e.verdict = v == "consistent"   ? Verdict::kConsistent
                : v == "inconsistent" ? Verdict::kInconsistent
                                      : Verdict::kUnchecked;
    e.millis = d.at("millis").get<long long>();
    if (d.contains("q")) e.q_terms = d.at("q");
    r.degrees.push_back(std::move(e));
  }
  return r;
}

}  // namespace eulerdata

#endif
