#ifndef WFA_LEVELS_HPP
#define WFA_LEVELS_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfa/context.hpp"
#include "wfa/term.hpp"

namespace wfa {

/// Raised when an encryption key atom has no entry in the context's
/// inverse map. Never defaulted silently.
class UndeclaredKeyError : public std::runtime_error {
 public:
  explicit UndeclaredKeyError(const std::string& key)
      : std::runtime_error("key " + key + " has no declared inverse"), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Raised when a sent message unifies with no pattern at all — a
/// malformed protocol model, since the message is itself a pattern.
class EmptyUnifiableSetError : public std::runtime_error {
 public:
  explicit EmptyUnifiableSetError(const std::string& message)
      : std::runtime_error("no pattern unifies with " + message) {}
};

/// Human-readable evaluation steps, collected when a sink is supplied.
struct DerivationTrace {
  std::vector<std::string> lines;
  void add(std::string line) { lines.push_back(std::move(line)); }
};

/// Identity atoms occurring anywhere in m, inner encryptions included;
/// keys, nonces, data atoms and variables are excluded.
SecurityLevel identities_of(const Term& m);

/// m with every variable other than the subject erased. Erasing one
/// half of a pair collapses it to the other half; a fully erased
/// payload leaves an encryption of the unit marker, which carries no
/// atoms. Variables in key position are kept.
Term derive(const Term& subject, const Term& m);

/// Security level of the subject (an atom or a variable term) in a set
/// of messages:
///   - bottom for a subject in clear,
///   - meet over set elements and over pair components,
///   - top when the subject does not occur,
///   - encryption under a weak outer key is skipped,
///   - encryption under a strong key yields the inverse-key readers
///     joined (meet) with the payload's identities.
/// For a variable subject every declared key counts as strong.
SecurityLevel f_level(const Term& subject, std::span<const Term> messages,
                      const VerificationContext& ctx,
                      DerivationTrace* trace = nullptr);
SecurityLevel f_level(const Term& subject, const Term& message,
                      const VerificationContext& ctx,
                      DerivationTrace* trace = nullptr);

/// f_level after erasing foreign variables from each message.
SecurityLevel f_prime(const Term& subject, std::span<const Term> messages,
                      const VerificationContext& ctx,
                      DerivationTrace* trace = nullptr);
SecurityLevel f_prime(const Term& subject, const Term& message,
                      const VerificationContext& ctx,
                      DerivationTrace* trace = nullptr);

/// Static upper bound for the subject in a single pattern.
SecurityLevel upper_bound(const Term& subject, const Term& m,
                          const VerificationContext& ctx,
                          DerivationTrace* trace = nullptr);

/// Static lower bound: the meet of f_prime over every pattern unifiable
/// with m (patterns renamed apart first). A pattern of m's own class
/// contributes f_prime(subject, m) directly. Throws
/// EmptyUnifiableSetError when nothing matches.
SecurityLevel lower_bound(const Term& subject, const Term& m,
                          std::span<const Term> patterns,
                          const VerificationContext& ctx,
                          DerivationTrace* trace = nullptr);

}  // namespace wfa

#endif  // WFA_LEVELS_HPP
