#include "wfa/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace wfa {

std::string to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Identity: return "identity";
    case AtomKind::Nonce: return "nonce";
    case AtomKind::Key: return "key";
    case AtomKind::Data: return "data";
  }
  return "?";
}

std::string Atom::str() const {
  return session ? name + "^" + *session : name;
}

namespace {

const std::shared_ptr<const Term::Node>& unit_node() {
  static const auto node =
      std::make_shared<const Term::Node>(Term::Node{Term::Kind::Unit, {}, {}, {}, {}});
  return node;
}

}  // namespace

Term::Term() : node_(unit_node()) {}

Term Term::unit() { return Term(); }

Term Term::atom(Atom a) {
  if (a.session && a.kind != AtomKind::Nonce) {
    throw std::invalid_argument("session tag on non-nonce atom: " + a.str());
  }
  auto node = std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, {}, {}});
  return Term(std::move(node));
}

Term Term::atom(std::string name, AtomKind kind, std::optional<std::string> session) {
  return atom(Atom{std::move(name), kind, std::move(session)});
}

Term Term::variable(std::string name) {
  auto node = std::make_shared<const Node>(Node{Kind::Variable, {}, std::move(name), {}, {}});
  return Term(std::move(node));
}

Term Term::concat(Term left, Term right) {
  auto node = std::make_shared<const Node>(
      Node{Kind::Concat, {}, {}, std::move(left), std::move(right)});
  return Term(std::move(node));
}

Term Term::seq(std::span<const Term> parts) {
  if (parts.empty()) throw std::invalid_argument("seq of zero terms");
  Term acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) {
    acc = concat(*it, acc);
  }
  return acc;
}

Term Term::seq(std::initializer_list<Term> parts) {
  return seq(std::span<const Term>(parts.begin(), parts.size()));
}

Term Term::enc(Term payload, Term key) {
  const bool key_ok = key.is_variable() ||
                      (key.is_atom() && key.as_atom().kind == AtomKind::Key);
  if (!key_ok) {
    throw std::invalid_argument("encryption key must be a key atom or a variable: " +
                                key.str());
  }
  auto node = std::make_shared<const Node>(
      Node{Kind::Enc, {}, {}, std::move(payload), std::move(key)});
  return Term(std::move(node));
}

bool Term::is_ground() const {
  switch (kind()) {
    case Kind::Unit:
    case Kind::Atom: return true;
    case Kind::Variable: return false;
    case Kind::Concat:
    case Kind::Enc: return node_->child0.is_ground() && node_->child1.is_ground();
  }
  return false;
}

const Atom& Term::as_atom() const {
  if (!is_atom()) throw std::logic_error("not an atom");
  return node_->atom;
}

const std::string& Term::var_name() const {
  if (!is_variable()) throw std::logic_error("not a variable");
  return node_->var;
}

const Term& Term::left() const {
  if (!is_concat()) throw std::logic_error("not a pair");
  return node_->child0;
}

const Term& Term::right() const {
  if (!is_concat()) throw std::logic_error("not a pair");
  return node_->child1;
}

const Term& Term::payload() const {
  if (!is_enc()) throw std::logic_error("not an encryption");
  return node_->child0;
}

const Term& Term::key() const {
  if (!is_enc()) throw std::logic_error("not an encryption");
  return node_->child1;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Unit: return true;
    case Kind::Atom: return node_->atom == other.node_->atom;
    case Kind::Variable: return node_->var == other.node_->var;
    case Kind::Concat:
    case Kind::Enc:
      return node_->child0 == other.node_->child0 &&
             node_->child1 == other.node_->child1;
  }
  return false;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = kind() <=> other.kind(); c != 0) return c;
  switch (kind()) {
    case Kind::Unit: return std::strong_ordering::equal;
    case Kind::Atom: return node_->atom <=> other.node_->atom;
    case Kind::Variable: return node_->var <=> other.node_->var;
    case Kind::Concat:
    case Kind::Enc:
      if (auto c = node_->child0 <=> other.node_->child0; c != 0) return c;
      return node_->child1 <=> other.node_->child1;
  }
  return std::strong_ordering::equal;
}

std::string Term::str() const {
  switch (kind()) {
    case Kind::Unit: return "[]";
    case Kind::Atom: return node_->atom.str();
    case Kind::Variable: return node_->var;
    case Kind::Concat: {
      const Term& l = node_->child0;
      std::string ls = l.is_concat() ? "(" + l.str() + ")" : l.str();
      return ls + "." + node_->child1.str();
    }
    case Kind::Enc:
      return "{" + node_->child0.str() + "}_" + node_->child1.str();
  }
  return "?";
}

std::string to_string(const Term& t) { return t.str(); }

namespace {

template <typename Fn>
void walk(const Term& t, Fn&& visit) {
  visit(t);
  if (t.is_concat()) {
    walk(t.left(), visit);
    walk(t.right(), visit);
  } else if (t.is_enc()) {
    walk(t.payload(), visit);
    walk(t.key(), visit);
  }
}

}  // namespace

std::set<Atom> atoms_of(const Term& m) {
  std::set<Atom> out;
  walk(m, [&](const Term& t) {
    if (t.is_atom()) out.insert(t.as_atom());
  });
  return out;
}

std::set<Atom> atoms_of(std::span<const Term> terms) {
  std::set<Atom> out;
  for (const Term& t : terms) {
    auto part = atoms_of(t);
    out.insert(part.begin(), part.end());
  }
  return out;
}

std::set<std::string> vars_of(const Term& m) {
  std::set<std::string> out;
  walk(m, [&](const Term& t) {
    if (t.is_variable()) out.insert(t.var_name());
  });
  return out;
}

std::set<std::string> vars_of(std::span<const Term> terms) {
  std::set<std::string> out;
  for (const Term& t : terms) {
    auto part = vars_of(t);
    out.insert(part.begin(), part.end());
  }
  return out;
}

std::set<std::string> sessions_of(const Term& m) {
  std::set<std::string> out;
  walk(m, [&](const Term& t) {
    if (t.is_atom() && t.as_atom().session) out.insert(*t.as_atom().session);
  });
  return out;
}

bool occurs(const Term& subject, const Term& m) {
  bool found = false;
  walk(m, [&](const Term& t) { found = found || t == subject; });
  return found;
}

namespace {

void collect_encryptions(const Term& t, std::vector<Term>& out) {
  if (t.is_enc()) {
    out.push_back(t);
    collect_encryptions(t.payload(), out);
  } else if (t.is_concat()) {
    collect_encryptions(t.left(), out);
    collect_encryptions(t.right(), out);
  }
}

struct CanonState {
  std::map<std::string, std::string> vars;
  std::map<std::string, std::string> sessions;
};

Term canonicalize(const Term& t, CanonState& st) {
  switch (t.kind()) {
    case Term::Kind::Unit: return t;
    case Term::Kind::Variable: {
      auto [it, fresh] = st.vars.try_emplace(
          t.var_name(), "$v" + std::to_string(st.vars.size()));
      (void)fresh;
      return Term::variable(it->second);
    }
    case Term::Kind::Atom: {
      const Atom& a = t.as_atom();
      if (!a.session) return t;
      auto [it, fresh] = st.sessions.try_emplace(
          *a.session, "$s" + std::to_string(st.sessions.size()));
      (void)fresh;
      return Term::atom(a.name, a.kind, it->second);
    }
    case Term::Kind::Concat: {
      Term l = canonicalize(t.left(), st);
      return Term::concat(std::move(l), canonicalize(t.right(), st));
    }
    case Term::Kind::Enc: {
      Term p = canonicalize(t.payload(), st);
      return Term::enc(std::move(p), canonicalize(t.key(), st));
    }
  }
  return t;
}

}  // namespace

Term canonical_pattern(const Term& t) {
  CanonState st;
  return canonicalize(t, st);
}

bool same_pattern_class(const Term& a, const Term& b) {
  return canonical_pattern(a) == canonical_pattern(b);
}

std::vector<Term> encryption_patterns(std::span<const Term> terms) {
  std::vector<Term> raw;
  for (const Term& t : terms) collect_encryptions(t, raw);
  std::vector<Term> out;
  std::set<Term> seen;
  for (const Term& t : raw) {
    if (seen.insert(canonical_pattern(t)).second) out.push_back(t);
  }
  return out;
}

namespace {

std::string ticked(std::string name, const std::set<std::string>& taken) {
  while (taken.count(name)) name += "'";
  return name;
}

}  // namespace

Term rename_apart(const Term& t, const std::set<std::string>& taken_vars,
                  const std::set<std::string>& taken_sessions) {
  std::map<std::string, std::string> var_map, session_map;
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    switch (u.kind()) {
      case Term::Kind::Unit: return u;
      case Term::Kind::Variable: {
        auto it = var_map.find(u.var_name());
        if (it == var_map.end()) {
          it = var_map.emplace(u.var_name(), ticked(u.var_name(), taken_vars)).first;
        }
        return Term::variable(it->second);
      }
      case Term::Kind::Atom: {
        const Atom& a = u.as_atom();
        if (!a.session) return u;
        auto it = session_map.find(*a.session);
        if (it == session_map.end()) {
          it = session_map.emplace(*a.session, ticked(*a.session, taken_sessions)).first;
        }
        return Term::atom(a.name, a.kind, it->second);
      }
      case Term::Kind::Concat: {
        Term l = go(u.left());
        return Term::concat(std::move(l), go(u.right()));
      }
      case Term::Kind::Enc: {
        Term p = go(u.payload());
        return Term::enc(std::move(p), go(u.key()));
      }
    }
    return u;
  };
  return go(t);
}

Term Substitution::apply(const Term& m) const {
  switch (m.kind()) {
    case Term::Kind::Unit:
    case Term::Kind::Atom: return m;
    case Term::Kind::Variable: {
      const Term* bound = lookup(m.var_name());
      return bound ? *bound : m;
    }
    case Term::Kind::Concat: {
      Term l = apply(m.left());
      return Term::concat(std::move(l), apply(m.right()));
    }
    case Term::Kind::Enc: {
      Term p = apply(m.payload());
      return Term::enc(std::move(p), apply(m.key()));
    }
  }
  return m;
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, const Term& value) {
  Term resolved = apply(value);
  if (resolved.is_variable() && resolved.var_name() == var) return;
  if (vars_of(resolved).count(var)) {
    throw std::invalid_argument("occurs violation binding " + var);
  }
  // Re-resolve existing bindings so the map stays idempotent.
  Substitution one;
  one.bindings_.emplace(var, resolved);
  for (auto& [v, t] : bindings_) t = one.apply(t);
  bindings_.emplace(var, std::move(resolved));
}

std::string Substitution::str() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [v, t] : bindings_) {
    if (!first) os << ", ";
    first = false;
    os << v << " -> " << t.str();
  }
  os << "]";
  return os.str();
}

namespace {

// Robinson unification over a triangular binding map; bindings are
// resolved to idempotent form at the end.
struct Unifier {
  std::map<std::string, Term> bound;

  Term walk(Term t) const {
    while (t.is_variable()) {
      auto it = bound.find(t.var_name());
      if (it == bound.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs_walked(const std::string& var, const Term& t) const {
    Term w = walk(t);
    switch (w.kind()) {
      case Term::Kind::Unit:
      case Term::Kind::Atom: return false;
      case Term::Kind::Variable: return w.var_name() == var;
      case Term::Kind::Concat:
        return occurs_walked(var, w.left()) || occurs_walked(var, w.right());
      case Term::Kind::Enc:
        return occurs_walked(var, w.payload()) || occurs_walked(var, w.key());
    }
    return false;
  }

  bool unify(const Term& a0, const Term& b0) {
    Term a = walk(a0);
    Term b = walk(b0);
    if (a.is_variable() && b.is_variable() && a.var_name() == b.var_name()) {
      return true;
    }
    if (a.is_variable()) {
      if (occurs_walked(a.var_name(), b)) return false;
      bound.emplace(a.var_name(), b);
      return true;
    }
    if (b.is_variable()) {
      if (occurs_walked(b.var_name(), a)) return false;
      bound.emplace(b.var_name(), a);
      return true;
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Term::Kind::Unit: return true;
      case Term::Kind::Atom: return a.as_atom() == b.as_atom();
      case Term::Kind::Concat:
        return unify(a.left(), b.left()) && unify(a.right(), b.right());
      case Term::Kind::Enc:
        return unify(a.payload(), b.payload()) && unify(a.key(), b.key());
      default: return false;
    }
  }

  Term resolve(const Term& t) const {
    Term w = walk(t);
    switch (w.kind()) {
      case Term::Kind::Unit:
      case Term::Kind::Atom:
      case Term::Kind::Variable: return w;
      case Term::Kind::Concat: {
        Term l = resolve(w.left());
        return Term::concat(std::move(l), resolve(w.right()));
      }
      case Term::Kind::Enc: {
        Term p = resolve(w.payload());
        return Term::enc(std::move(p), resolve(w.key()));
      }
    }
    return w;
  }
};

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Unifier u;
  if (!u.unify(a, b)) return std::nullopt;
  Substitution out;
  for (const auto& [var, _] : u.bound) {
    Term value = u.resolve(Term::variable(var));
    if (value.is_variable() && value.var_name() == var) continue;
    out.bind(var, value);
  }
  return out;
}

}  // namespace wfa
