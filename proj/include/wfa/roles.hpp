#ifndef WFA_ROLES_HPP
#define WFA_ROLES_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfa/context.hpp"
#include "wfa/term.hpp"

namespace wfa {

class MalformedProtocolError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolStep {
  int index = 0;
  std::string sender;
  std::string receiver;
  Term message;

  bool operator==(const ProtocolStep&) const = default;
};

enum class Direction { Recv, Send };

struct Event {
  Direction dir = Direction::Send;
  Term message;

  bool operator==(const Event&) const = default;
};

/// A per-principal projection of the protocol: what the principal sends
/// and receives, with components it cannot know or check abstracted to
/// variables and its own nonces tagged with the session symbol.
struct GeneralizedRole {
  std::string principal;
  std::string session_tag;
  std::vector<Event> events;

  bool operator==(const GeneralizedRole&) const = default;
};

/// One receive/send rule: everything received so far over the sent
/// message.
struct RuleStep {
  std::string label;           // S_A^1, S_B, ...
  std::vector<Term> received;  // cumulative, in event order
  Term sent;

  bool operator==(const RuleStep&) const = default;
};

struct Protocol {
  std::string name;
  std::vector<ProtocolStep> steps;
  std::optional<std::vector<GeneralizedRole>> declared_roles;

  /// Throws MalformedProtocolError on non-contiguous step indices or a
  /// step whose sender equals its receiver.
  void validate() const;
};

/// Projects the protocol onto each non-intruder principal. When
/// declared_roles is present it is returned verbatim. Throws
/// MalformedProtocolError when a principal would send an atom it never
/// originated nor learned.
std::vector<GeneralizedRole> extract_generalized_roles(
    const Protocol& p, const VerificationContext& ctx);

/// One rule per send event; a trailing receive produces no rule.
std::vector<RuleStep> rule_steps(const GeneralizedRole& role);

/// All sent messages plus their encryption patterns, deduplicated up to
/// variable/session renaming. This is the pattern universe for the
/// lower bound and for tagging.
std::vector<Term> generated_messages(std::span<const GeneralizedRole> roles);

/// Role equality up to renaming of variables and session tags.
bool same_role_shape(const GeneralizedRole& a, const GeneralizedRole& b);

}  // namespace wfa

#endif  // WFA_ROLES_HPP
