#include "wfa/tagging.hpp"

#include <algorithm>

namespace wfa {

std::string to_string(OriginVerdict v) {
  switch (v) {
    case OriginVerdict::Unique: return "unique";
    case OriginVerdict::Ambiguous: return "ambiguous";
    case OriginVerdict::NoOrigin: return "no-origin";
  }
  return "?";
}

TaggingReport check_tagged(std::span<const GeneralizedRole> roles,
                           const VerificationContext& ctx) {
  (void)ctx;
  const std::vector<Term> universe = generated_messages(roles);

  TaggingReport report;
  report.tagged = true;
  std::set<Term> seen;  // canonical receive patterns already reported

  for (const GeneralizedRole& role : roles) {
    for (const Event& e : role.events) {
      if (e.dir != Direction::Recv) continue;
      for (const Term& pattern : encryption_patterns({&e.message, 1})) {
        if (!seen.insert(canonical_pattern(pattern)).second) continue;

        TagFinding finding;
        finding.role = role.principal;
        finding.receive_pattern = pattern.str();
        finding.ground = vars_of(pattern).empty();

        const auto taken_vars = vars_of(pattern);
        const auto taken_sessions = sessions_of(pattern);
        for (const Term& candidate : universe) {
          if (same_pattern_class(candidate, pattern)) {
            finding.unifiable_origins.push_back(candidate.str());
            continue;
          }
          Term renamed = rename_apart(candidate, taken_vars, taken_sessions);
          if (unify(pattern, renamed)) {
            finding.unifiable_origins.push_back(candidate.str());
          }
        }

        const std::size_t n = finding.unifiable_origins.size();
        if (finding.ground) {
          finding.verdict = n >= 1 ? OriginVerdict::Unique : OriginVerdict::NoOrigin;
        } else if (n == 1) {
          finding.verdict = OriginVerdict::Unique;
        } else if (n == 0) {
          finding.verdict = OriginVerdict::NoOrigin;
        } else {
          finding.verdict = OriginVerdict::Ambiguous;
        }
        if (finding.verdict != OriginVerdict::Unique) report.tagged = false;
        report.findings.push_back(std::move(finding));
      }
    }
  }
  return report;
}

}  // namespace wfa
