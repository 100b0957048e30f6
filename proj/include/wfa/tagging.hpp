#ifndef WFA_TAGGING_HPP
#define WFA_TAGGING_HPP

#include <span>
#include <string>
#include <vector>

#include "wfa/context.hpp"
#include "wfa/roles.hpp"
#include "wfa/term.hpp"

namespace wfa {

enum class OriginVerdict { Unique, Ambiguous, NoOrigin };

std::string to_string(OriginVerdict v);

struct TagFinding {
  std::string role;             // receiving principal
  std::string receive_pattern;  // rendered encryption subterm under scrutiny
  bool ground = false;          // pattern carries no variables
  std::vector<std::string> unifiable_origins;
  OriginVerdict verdict = OriginVerdict::NoOrigin;

  bool operator==(const TagFinding&) const = default;
};

struct TaggingReport {
  bool tagged = false;
  std::vector<TagFinding> findings;

  bool operator==(const TaggingReport&) const = default;
};

/// Decides whether every received encryption pattern has a unique
/// regular origin among the protocol's generated patterns. A pattern's
/// own class counts as one origin; variable-bearing patterns must match
/// exactly one class, ground ones must match at least one.
TaggingReport check_tagged(std::span<const GeneralizedRole> roles,
                           const VerificationContext& ctx);

}  // namespace wfa

#endif  // WFA_TAGGING_HPP
