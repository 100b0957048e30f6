#include "wfa/report_io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wfa {

namespace {

using nlohmann::json;

json level_to_json(const SecurityLevel& level) {
  json out = json::array();
  for (const auto& r : level.readers()) out.push_back(r);
  return out;
}

SecurityLevel level_from_json(const json& j) {
  std::set<std::string> readers;
  for (const auto& r : j) readers.insert(r.get<std::string>());
  return SecurityLevel(std::move(readers));
}

OriginVerdict verdict_from_string(const std::string& s) {
  if (s == "unique") return OriginVerdict::Unique;
  if (s == "ambiguous") return OriginVerdict::Ambiguous;
  if (s == "no-origin") return OriginVerdict::NoOrigin;
  throw std::runtime_error("unknown origin verdict: " + s);
}

AnalysisMode mode_from_string(const std::string& s) {
  if (s == "tagged") return AnalysisMode::Tagged;
  if (s == "general") return AnalysisMode::General;
  throw std::runtime_error("unknown analysis mode: " + s);
}

Conclusion conclusion_from_string(const std::string& s) {
  if (s == "correct_for_secrecy") return Conclusion::CorrectForSecrecy;
  if (s == "not_certified") return Conclusion::NotCertified;
  if (s == "not_tagged") return Conclusion::NotTagged;
  throw std::runtime_error("unknown conclusion: " + s);
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
  json j;
  j["protocol"] = report.protocol;
  j["mode"] = to_string(report.mode);
  j["conclusion"] = to_string(report.conclusion);

  json tagging;
  tagging["tagged"] = report.tagging.tagged;
  tagging["findings"] = json::array();
  for (const TagFinding& f : report.tagging.findings) {
    json jf;
    jf["role"] = f.role;
    jf["receive_pattern"] = f.receive_pattern;
    jf["ground"] = f.ground;
    jf["origins"] = f.unifiable_origins;
    jf["verdict"] = to_string(f.verdict);
    tagging["findings"].push_back(std::move(jf));
  }
  j["tagging"] = std::move(tagging);

  j["verdicts"] = json::array();
  for (const AtomVerdict& v : report.verdicts) {
    json jv;
    jv["role"] = v.role;
    jv["step"] = v.step;
    jv["alpha"] = v.alpha;
    jv["lhs"] = level_to_json(v.lhs);
    jv["alpha_level"] = level_to_json(v.alpha_level);
    jv["rhs_recv"] = level_to_json(v.rhs_recv);
    jv["pass"] = v.pass;
    jv["derivation"] = v.derivation;
    j["verdicts"].push_back(std::move(jv));
  }

  j["skipped"] = json::array();
  for (const SkipNote& s : report.skipped) {
    j["skipped"].push_back(
        {{"role", s.role}, {"step", s.step}, {"alpha", s.alpha}, {"reason", s.reason}});
  }

  j["warnings"] = report.warnings;

  if (report.reliability) {
    j["reliability"] = {
        {"well_formed_samples", report.reliability->well_formed_samples},
        {"well_formed_failures", report.reliability->well_formed_failures},
        {"invariance_sets", report.reliability->invariance_sets},
        {"invariance_witnesses", report.reliability->invariance_witnesses},
        {"holds", report.reliability->holds()},
    };
  }

  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
  json j = json::parse(text);
  AnalysisReport report;
  report.protocol = j.at("protocol").get<std::string>();
  report.mode = mode_from_string(j.at("mode").get<std::string>());
  report.conclusion = conclusion_from_string(j.at("conclusion").get<std::string>());

  const json& tagging = j.at("tagging");
  report.tagging.tagged = tagging.at("tagged").get<bool>();
  for (const json& jf : tagging.at("findings")) {
    TagFinding f;
    f.role = jf.at("role").get<std::string>();
    f.receive_pattern = jf.at("receive_pattern").get<std::string>();
    f.ground = jf.at("ground").get<bool>();
    f.unifiable_origins = jf.at("origins").get<std::vector<std::string>>();
    f.verdict = verdict_from_string(jf.at("verdict").get<std::string>());
    report.tagging.findings.push_back(std::move(f));
  }

  for (const json& jv : j.at("verdicts")) {
    AtomVerdict v;
    v.role = jv.at("role").get<std::string>();
    v.step = jv.at("step").get<std::string>();
    v.alpha = jv.at("alpha").get<std::string>();
    v.lhs = level_from_json(jv.at("lhs"));
    v.alpha_level = level_from_json(jv.at("alpha_level"));
    v.rhs_recv = level_from_json(jv.at("rhs_recv"));
    v.pass = jv.at("pass").get<bool>();
    v.derivation = jv.at("derivation").get<std::vector<std::string>>();
    report.verdicts.push_back(std::move(v));
  }

  for (const json& js : j.at("skipped")) {
    report.skipped.push_back({js.at("role").get<std::string>(),
                              js.at("step").get<std::string>(),
                              js.at("alpha").get<std::string>(),
                              js.at("reason").get<std::string>()});
  }

  report.warnings = j.at("warnings").get<std::vector<std::string>>();

  if (j.contains("reliability")) {
    ReliabilitySummary r;
    r.well_formed_samples = j["reliability"].at("well_formed_samples").get<int>();
    r.well_formed_failures = j["reliability"].at("well_formed_failures").get<int>();
    r.invariance_sets = j["reliability"].at("invariance_sets").get<int>();
    r.invariance_witnesses = j["reliability"].at("invariance_witnesses").get<int>();
    report.reliability = r;
  }

  return report;
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream os;
  os << "protocol: " << report.protocol << "\n";
  os << "mode: " << to_string(report.mode) << "\n";
  os << "tagging: " << (report.tagging.tagged ? "tagged" : "not tagged") << "\n";
  for (const TagFinding& f : report.tagging.findings) {
    os << "  [" << to_string(f.verdict) << "] " << f.role << " receives "
       << f.receive_pattern;
    if (f.unifiable_origins.empty()) {
      os << "  (no origin)";
    } else {
      os << "  origins:";
      for (const std::string& o : f.unifiable_origins) os << " " << o;
    }
    os << "\n";
  }

  std::string current;
  for (const AtomVerdict& v : report.verdicts) {
    std::string header = v.step + " (role " + v.role + ")";
    if (header != current) {
      current = header;
      os << "rule " << header << "\n";
    }
    os << "  alpha " << v.alpha << ": send=" << v.lhs.str()
       << " declared=" << v.alpha_level.str() << " recv=" << v.rhs_recv.str()
       << " -> " << (v.pass ? "pass" : "FAIL") << "\n";
    for (const std::string& line : v.derivation) {
      os << "    | " << line << "\n";
    }
  }

  for (const SkipNote& s : report.skipped) {
    os << "skipped " << s.alpha << " in " << s.step << " (role " << s.role
       << "): " << s.reason << "\n";
  }
  for (const std::string& w : report.warnings) {
    os << "warning: " << w << "\n";
  }
  if (report.reliability) {
    const ReliabilitySummary& r = *report.reliability;
    os << "reliability: well-formed " << (r.well_formed_samples - r.well_formed_failures)
       << "/" << r.well_formed_samples << " samples, full-invariance "
       << (r.invariance_sets - r.invariance_witnesses) << "/" << r.invariance_sets
       << " knowledge sets -> " << (r.holds() ? "pass" : "FAIL") << "\n";
  }

  os << "conclusion: " << to_string(report.conclusion) << "\n";
  return os.str();
}

}  // namespace wfa
