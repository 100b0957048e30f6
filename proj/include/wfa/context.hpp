#ifndef WFA_CONTEXT_HPP
#define WFA_CONTEXT_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfa/term.hpp"

namespace wfa {

/// An element of the powerset security lattice over agent identities,
/// with the reversed ordering: fewer permitted readers means a higher
/// level. Top is the empty reader set (no one may read), bottom is the
/// full agent universe (public).
class SecurityLevel {
 public:
  SecurityLevel() = default;  // top
  explicit SecurityLevel(std::set<std::string> readers)
      : readers_(std::move(readers)) {}

  static SecurityLevel top() { return SecurityLevel(); }
  static SecurityLevel of(std::initializer_list<std::string> names) {
    return SecurityLevel(std::set<std::string>(names));
  }

  const std::set<std::string>& readers() const { return readers_; }
  bool is_top() const { return readers_.empty(); }

  bool operator==(const SecurityLevel&) const = default;
  auto operator<=>(const SecurityLevel&) const = default;

  /// Renders as a sorted reader list: "{A,B}"; top is "{}".
  std::string str() const;

 private:
  std::set<std::string> readers_;
};

/// l1 is at least as secure as l2: readers(l1) ⊆ readers(l2).
bool geq(const SecurityLevel& l1, const SecurityLevel& l2);

/// Greatest lower bound — reader-set union.
SecurityLevel meet(const SecurityLevel& l1, const SecurityLevel& l2);

/// Least upper bound — reader-set intersection.
SecurityLevel join(const SecurityLevel& l1, const SecurityLevel& l2);

class ContextError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything the analysis needs to know about the world: the agent
/// universe (intruder included), the key-inverse pairing, declared
/// security levels, the intruder's initial knowledge and the protocol
/// variables. Immutable once validated.
struct VerificationContext {
  std::set<std::string> agents;
  std::string intruder;
  std::map<std::string, std::string> inverse;            // key name -> key name
  std::map<std::string, SecurityLevel> assigned_level;   // atom name -> level
  std::vector<Term> intruder_knowledge;                  // ground atoms
  std::set<std::string> variables;

  SecurityLevel top() const { return SecurityLevel::top(); }
  SecurityLevel bottom() const { return SecurityLevel(agents); }

  /// Declared level of the named atom, or top when undeclared.
  /// Session tags are ignored: Na^i has the level declared for Na.
  SecurityLevel level_of_name(const std::string& name) const;
  SecurityLevel level_of(const Atom& a) const { return level_of_name(a.name); }
  bool has_level(const std::string& name) const {
    return assigned_level.count(name) > 0;
  }

  std::optional<std::string> inverse_of(const std::string& key_name) const;

  /// True when the principal can decrypt messages under the named key,
  /// i.e. it is among the declared readers of the key's inverse.
  bool holds_inverse(const std::string& principal,
                     const std::string& key_name) const;

  /// Throws ContextError on a broken invariant (non-involutive inverse
  /// map, unknown intruder, level readers outside the universe, ...).
  void validate() const;
};

}  // namespace wfa

#endif  // WFA_CONTEXT_HPP
