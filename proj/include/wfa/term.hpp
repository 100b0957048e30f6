#ifndef WFA_TERM_HPP
#define WFA_TERM_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace wfa {

enum class AtomKind { Identity, Nonce, Key, Data };

std::string to_string(AtomKind kind);

/// A named constant of the message algebra. Session tags distinguish
/// per-session fresh nonces (Na^i vs Na^j); only nonces carry them.
struct Atom {
  std::string name;
  AtomKind kind = AtomKind::Data;
  std::optional<std::string> session;

  auto operator<=>(const Atom&) const = default;
  std::string str() const;
};

/// Immutable message term: atom, variable, pairing ("." — right
/// associated), or encryption {payload}_key. Keys are atomic (a Key
/// atom or a variable); compound keys are not representable.
///
/// Unit is an internal marker for a fully-erased payload; it never
/// appears in parsed protocols.
class Term {
 public:
  enum class Kind { Unit, Atom, Variable, Concat, Enc };

  Term();  // Unit

  static Term unit();
  static Term atom(Atom a);
  static Term atom(std::string name, AtomKind kind,
                   std::optional<std::string> session = std::nullopt);
  static Term variable(std::string name);
  static Term concat(Term left, Term right);
  /// Right-associated fold of two or more parts.
  static Term seq(std::span<const Term> parts);
  static Term seq(std::initializer_list<Term> parts);
  /// Throws std::invalid_argument unless key is a Key atom or a variable.
  static Term enc(Term payload, Term key);

  Kind kind() const { return node_->kind; }
  bool is_unit() const { return kind() == Kind::Unit; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_concat() const { return kind() == Kind::Concat; }
  bool is_enc() const { return kind() == Kind::Enc; }
  bool is_ground() const;

  const Atom& as_atom() const;
  const std::string& var_name() const;
  const Term& left() const;     // Concat
  const Term& right() const;    // Concat
  const Term& payload() const;  // Enc
  const Term& key() const;      // Enc

  bool operator==(const Term& other) const;
  std::strong_ordering operator<=>(const Term& other) const;

  /// Concrete syntax: "Na^i.A.B", "{Na^i.A.B}_kb". Left-nested pairs
  /// are parenthesized, so printing round-trips through the parser.
  std::string str() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  Atom atom;         // Kind::Atom
  std::string var;   // Kind::Variable
  Term child0;       // Concat left / Enc payload
  Term child1;       // Concat right / Enc key
};

std::string to_string(const Term& t);

/// All atoms occurring anywhere in m, key positions included.
/// Variables are not atoms.
std::set<Atom> atoms_of(const Term& m);
std::set<Atom> atoms_of(std::span<const Term> terms);

/// Names of all variables occurring in m, key positions included.
std::set<std::string> vars_of(const Term& m);
std::set<std::string> vars_of(std::span<const Term> terms);

/// Session tags occurring on atoms of m.
std::set<std::string> sessions_of(const Term& m);

/// True when the subject (an atom or a variable term) occurs in m.
bool occurs(const Term& subject, const Term& m);

/// Every Enc subterm of every input, at any depth, deduplicated up to
/// renaming of variables and session tags. First representative wins;
/// input order is preserved.
std::vector<Term> encryption_patterns(std::span<const Term> terms);

/// Canonical form of a pattern class: variables and session tags are
/// renamed to positional placeholders in traversal order.
Term canonical_pattern(const Term& t);

/// True when a and b are the same pattern up to variable/session renaming.
bool same_pattern_class(const Term& a, const Term& b);

/// Copy of t with variables and session tags renamed away from `taken`
/// (a tick is appended until the name is fresh).
Term rename_apart(const Term& t, const std::set<std::string>& taken_vars,
                  const std::set<std::string>& taken_sessions);

/// An idempotent variable binding. Construct via unify() or bind().
class Substitution {
 public:
  Substitution() = default;

  Term apply(const Term& m) const;
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Term* lookup(const std::string& var) const;
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  /// Adds var ↦ value, resolving existing bindings so the result stays
  /// idempotent. Throws std::invalid_argument on an occurs violation.
  void bind(const std::string& var, const Term& value);

  bool operator==(const Substitution&) const = default;
  std::string str() const;

 private:
  std::map<std::string, Term> bindings_;
};

/// Most general syntactic unifier, or nullopt when the terms clash.
/// Atoms unify only when name, kind and session all agree.
std::optional<Substitution> unify(const Term& a, const Term& b);

}  // namespace wfa

#endif  // WFA_TERM_HPP
