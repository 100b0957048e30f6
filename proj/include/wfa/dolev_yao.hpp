#ifndef WFA_DOLEV_YAO_HPP
#define WFA_DOLEV_YAO_HPP

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wfa/context.hpp"
#include "wfa/term.hpp"

namespace wfa {

/// A set of ground messages the intruder holds. Construction rejects
/// terms containing variables.
struct KnowledgeSet {
  std::vector<Term> terms;

  KnowledgeSet() = default;
  explicit KnowledgeSet(std::vector<Term> ts);
};

/// Everything derivable from the knowledge (plus the context's intruder
/// knowledge) under pairing/splitting, encryption with known keys and
/// decryption with known inverse keys. Splitting and decryption run to
/// fixpoint; newly built terms are bounded by nesting depth to keep the
/// closure finite.
std::set<Term> derive_closure(const KnowledgeSet& k,
                              const VerificationContext& ctx, int depth);

/// Nesting depth: atoms are 0, pairs and encryptions one more than
/// their deepest child.
int term_depth(const Term& t);

struct InvarianceResult {
  bool holds = true;
  std::optional<Term> witness;  // first derivable message that lowers the level
};

/// Checks that no derivable message assigns alpha a lower level than the
/// source set does, unless the intruder holds some atom at least as
/// secret as alpha.
InvarianceResult check_full_invariance(const VerificationContext& ctx,
                                       const KnowledgeSet& knowledge,
                                       const Term& alpha, int depth);

struct WellFormedSample {
  Term alpha;               // atom or variable
  std::vector<Term> m1;
  std::vector<Term> m2;
};

struct WellFormedResult {
  bool holds = true;
  int samples = 0;
  std::string counterexample;  // empty when holds
};

/// Drives a sample generator (call until nullopt) and asserts the three
/// laws — subject in clear is bottom, meet distributes over set union,
/// absent subject is top — for both the plain and the derivative level.
/// Stops at the first failure.
WellFormedResult check_well_formed(
    const VerificationContext& ctx,
    const std::function<std::optional<WellFormedSample>()>& next_sample);

}  // namespace wfa

#endif  // WFA_DOLEV_YAO_HPP
