#ifndef WFA_ANALYSIS_HPP
#define WFA_ANALYSIS_HPP

#include <string>
#include <vector>

#include "wfa/context.hpp"
#include "wfa/roles.hpp"
#include "wfa/tagging.hpp"

namespace wfa {

enum class AnalysisMode { Tagged, General };
enum class Conclusion { CorrectForSecrecy, NotCertified, NotTagged };

std::string to_string(AnalysisMode m);
std::string to_string(Conclusion c);

/// One increasing-condition check: does the level of alpha on sending
/// dominate its declared level met with its level on receiving?
struct AtomVerdict {
  std::string role;
  std::string step;
  std::string alpha;  // rendered atom or variable
  SecurityLevel lhs;
  SecurityLevel alpha_level;
  SecurityLevel rhs_recv;
  bool pass = false;
  std::vector<std::string> derivation;

  bool operator==(const AtomVerdict&) const = default;
};

struct SkipNote {
  std::string role;
  std::string step;
  std::string alpha;
  std::string reason;

  bool operator==(const SkipNote&) const = default;
};

struct ReliabilitySummary {
  int well_formed_samples = 0;
  int well_formed_failures = 0;
  int invariance_sets = 0;
  int invariance_witnesses = 0;

  bool holds() const {
    return well_formed_failures == 0 && invariance_witnesses == 0;
  }
  bool operator==(const ReliabilitySummary&) const = default;
};

struct AnalysisReport {
  std::string protocol;
  AnalysisMode mode = AnalysisMode::Tagged;
  TaggingReport tagging;
  std::vector<AtomVerdict> verdicts;
  std::vector<SkipNote> skipped;
  std::vector<std::string> warnings;
  Conclusion conclusion = Conclusion::NotCertified;
  std::optional<ReliabilitySummary> reliability;

  bool operator==(const AnalysisReport&) const = default;
};

/// Reduced check for tagged protocols: the derivative level alone on
/// both sides of every rule. Refuses (NotTagged) when some received
/// pattern lacks a unique origin.
AnalysisReport analyze_tagged(const Protocol& p, const VerificationContext& ctx);

/// General check: sent messages are measured with the lower bound over
/// all unifiable patterns, received ones with the derivative level.
AnalysisReport analyze_general(const Protocol& p, const VerificationContext& ctx);

}  // namespace wfa

#endif  // WFA_ANALYSIS_HPP
