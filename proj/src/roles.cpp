#include "wfa/roles.hpp"

#include <algorithm>
#include <map>

namespace wfa {

void Protocol::validate() const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ProtocolStep& s = steps[i];
    if (s.index != static_cast<int>(i) + 1) {
      throw MalformedProtocolError("step indices must run 1..n, got " +
                                   std::to_string(s.index) + " at position " +
                                   std::to_string(i + 1));
    }
    if (s.sender == s.receiver) {
      throw MalformedProtocolError("step " + std::to_string(s.index) +
                                   " sends from " + s.sender + " to itself");
    }
  }
}

namespace {

const char* kSessionSymbols[] = {"i", "j", "k", "l", "m", "n"};

std::string session_symbol(std::size_t role_index) {
  if (role_index < std::size(kSessionSymbols)) return kSessionSymbols[role_index];
  return "s" + std::to_string(role_index + 1);
}

// Hands out declared protocol variables first, then V1, V2, ...
class VariablePool {
 public:
  explicit VariablePool(const VerificationContext& ctx) {
    declared_.assign(ctx.variables.begin(), ctx.variables.end());
  }

  std::string fresh() {
    if (next_ < declared_.size()) return declared_[next_++];
    return "V" + std::to_string(++synth_);
  }

 private:
  std::vector<std::string> declared_;
  std::size_t next_ = 0;
  std::size_t synth_ = 0;
};

// Per-principal projection state: which opaque subterms map to which
// variable, accumulated across the role's events.
struct Projection {
  const VerificationContext& ctx;
  const std::map<std::string, std::string>& nonce_origin;
  std::string principal;
  std::string session;
  VariablePool& pool;
  std::map<Term, Term> abstraction;

  bool originates(const Atom& a) const {
    auto it = nonce_origin.find(a.name);
    return it != nonce_origin.end() && it->second == principal;
  }

  Term own_tagged(const Atom& a) const {
    return Term::atom(a.name, a.kind, session);
  }

  Term receive(const Term& m) {
    if (auto it = abstraction.find(m); it != abstraction.end()) return it->second;
    switch (m.kind()) {
      case Term::Kind::Unit:
      case Term::Kind::Variable: return m;
      case Term::Kind::Atom: {
        const Atom& a = m.as_atom();
        if (a.kind != AtomKind::Nonce) return m;
        if (originates(a)) return own_tagged(a);
        Term var = Term::variable(pool.fresh());
        abstraction.emplace(m, var);
        return var;
      }
      case Term::Kind::Concat: {
        Term l = receive(m.left());
        return Term::concat(std::move(l), receive(m.right()));
      }
      case Term::Kind::Enc: {
        const Term& key = m.key();
        if (key.is_atom() && ctx.holds_inverse(principal, key.as_atom().name)) {
          return Term::enc(receive(m.payload()), key);
        }
        // Undecipherable blob: opaque as a whole.
        Term var = Term::variable(pool.fresh());
        abstraction.emplace(m, var);
        return var;
      }
    }
    return m;
  }

  Term send(const Term& m) {
    if (auto it = abstraction.find(m); it != abstraction.end()) return it->second;
    switch (m.kind()) {
      case Term::Kind::Unit:
      case Term::Kind::Variable: return m;
      case Term::Kind::Atom: {
        const Atom& a = m.as_atom();
        if (a.kind != AtomKind::Nonce) return m;
        if (originates(a)) return own_tagged(a);
        throw MalformedProtocolError(principal + " sends " + a.str() +
                                     " which it never originated nor learned");
      }
      case Term::Kind::Concat: {
        Term l = send(m.left());
        return Term::concat(std::move(l), send(m.right()));
      }
      case Term::Kind::Enc: {
        Term p = send(m.payload());
        return Term::enc(std::move(p), m.key());
      }
    }
    return m;
  }
};

}  // namespace

std::vector<GeneralizedRole> extract_generalized_roles(
    const Protocol& p, const VerificationContext& ctx) {
  if (p.declared_roles) return *p.declared_roles;
  p.validate();

  // A nonce belongs to the sender of the first step it appears in.
  std::map<std::string, std::string> nonce_origin;
  for (const ProtocolStep& s : p.steps) {
    for (const Atom& a : atoms_of(s.message)) {
      if (a.kind == AtomKind::Nonce) nonce_origin.try_emplace(a.name, s.sender);
    }
  }

  std::vector<std::string> principals;
  auto note = [&](const std::string& name) {
    if (name != ctx.intruder &&
        std::find(principals.begin(), principals.end(), name) == principals.end()) {
      principals.push_back(name);
    }
  };
  for (const ProtocolStep& s : p.steps) {
    note(s.sender);
    note(s.receiver);
  }

  VariablePool pool(ctx);
  std::vector<GeneralizedRole> roles;
  for (std::size_t ri = 0; ri < principals.size(); ++ri) {
    GeneralizedRole role;
    role.principal = principals[ri];
    role.session_tag = session_symbol(ri);
    Projection proj{ctx, nonce_origin, role.principal, role.session_tag, pool, {}};
    for (const ProtocolStep& s : p.steps) {
      if (s.sender == role.principal) {
        role.events.push_back({Direction::Send, proj.send(s.message)});
      } else if (s.receiver == role.principal) {
        role.events.push_back({Direction::Recv, proj.receive(s.message)});
      }
    }
    roles.push_back(std::move(role));
  }
  return roles;
}

std::vector<RuleStep> rule_steps(const GeneralizedRole& role) {
  std::size_t send_count = std::count_if(
      role.events.begin(), role.events.end(),
      [](const Event& e) { return e.dir == Direction::Send; });

  std::vector<RuleStep> rules;
  std::vector<Term> received;
  for (const Event& e : role.events) {
    if (e.dir == Direction::Recv) {
      received.push_back(e.message);
      continue;
    }
    RuleStep rule;
    rule.label = "S_" + role.principal;
    if (send_count > 1) rule.label += "^" + std::to_string(rules.size() + 1);
    rule.received = received;
    rule.sent = e.message;
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<Term> generated_messages(std::span<const GeneralizedRole> roles) {
  std::vector<Term> sent;
  for (const GeneralizedRole& role : roles) {
    for (const Event& e : role.events) {
      if (e.dir == Direction::Send) sent.push_back(e.message);
    }
  }
  std::vector<Term> out;
  std::set<Term> seen;
  auto add = [&](const Term& t) {
    if (seen.insert(canonical_pattern(t)).second) out.push_back(t);
  };
  for (const Term& t : sent) add(t);
  for (const Term& t : encryption_patterns(sent)) add(t);
  return out;
}

bool same_role_shape(const GeneralizedRole& a, const GeneralizedRole& b) {
  if (a.principal != b.principal || a.events.size() != b.events.size()) return false;
  if (a.events.empty()) return true;
  // Canonicalize across the whole event sequence so variable reuse
  // between events must match too.
  auto flatten = [](const GeneralizedRole& r) {
    std::vector<Term> parts;
    parts.reserve(r.events.size());
    for (const Event& e : r.events) parts.push_back(e.message);
    return canonical_pattern(Term::seq(parts));
  };
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    if (a.events[i].dir != b.events[i].dir) return false;
  }
  return flatten(a) == flatten(b);
}

}  // namespace wfa
