#include "wfa/levels.hpp"

#include <optional>
#include <stdexcept>

namespace wfa {

namespace {

void require_subject(const Term& subject) {
  if (!subject.is_atom() && !subject.is_variable()) {
    throw std::invalid_argument("analysis subject must be an atom or a variable: " +
                                subject.str());
  }
}

void trace_line(DerivationTrace* trace, std::string line) {
  if (trace) trace->add(std::move(line));
}

}  // namespace

SecurityLevel identities_of(const Term& m) {
  std::set<std::string> ids;
  for (const Atom& a : atoms_of(m)) {
    if (a.kind == AtomKind::Identity) ids.insert(a.name);
  }
  return SecurityLevel(std::move(ids));
}

namespace {

std::optional<Term> erase_vars(const Term& subject, const Term& m,
                               std::set<std::string>* removed) {
  switch (m.kind()) {
    case Term::Kind::Unit:
    case Term::Kind::Atom: return m;
    case Term::Kind::Variable:
      if (subject.is_variable() && subject.var_name() == m.var_name()) return m;
      if (removed) removed->insert(m.var_name());
      return std::nullopt;
    case Term::Kind::Concat: {
      auto l = erase_vars(subject, m.left(), removed);
      auto r = erase_vars(subject, m.right(), removed);
      if (l && r) return Term::concat(std::move(*l), std::move(*r));
      if (l) return l;
      return r;
    }
    case Term::Kind::Enc: {
      auto p = erase_vars(subject, m.payload(), removed);
      return Term::enc(p ? std::move(*p) : Term::unit(), m.key());
    }
  }
  return m;
}

}  // namespace

Term derive(const Term& subject, const Term& m) {
  require_subject(subject);
  auto out = erase_vars(subject, m, nullptr);
  return out ? *out : Term::unit();
}

namespace {

// One message of the set; the meet over sets/pairs lives in the callers.
SecurityLevel f_single(const Term& subject, const Term& m,
                       const VerificationContext& ctx, DerivationTrace* trace) {
  if (!occurs(subject, m)) {
    trace_line(trace, "F(" + subject.str() + ", " + m.str() + ") = {} [absent]");
    return SecurityLevel::top();
  }
  if (m == subject) {
    trace_line(trace, subject.str() + " in clear = " + ctx.bottom().str());
    return ctx.bottom();
  }
  switch (m.kind()) {
    case Term::Kind::Concat: {
      trace_line(trace, "well-formed split: " + m.left().str() + " , " +
                            m.right().str());
      SecurityLevel l = f_single(subject, m.left(), ctx, trace);
      return meet(l, f_single(subject, m.right(), ctx, trace));
    }
    case Term::Kind::Enc: {
      const Term& key = m.key();
      if (key.is_variable()) {
        // An unknown key protects nothing.
        trace_line(trace, "weak key " + key.str() + " (variable): encryption ignored");
        return f_single(subject, m.payload(), ctx, trace);
      }
      const std::string& key_name = key.as_atom().name;
      auto inv = ctx.inverse_of(key_name);
      if (!inv) throw UndeclaredKeyError(key_name);
      SecurityLevel inv_level = ctx.level_of_name(*inv);
      // A variable subject could stand for anything, so no key is ever
      // too weak for it.
      SecurityLevel subject_level =
          subject.is_variable() ? ctx.bottom() : ctx.level_of(subject.as_atom());
      if (geq(inv_level, subject_level)) {
        SecurityLevel ids = identities_of(m.payload());
        if (subject.is_atom() && subject.as_atom().kind == AtomKind::Identity) {
          std::set<std::string> trimmed = ids.readers();
          trimmed.erase(subject.as_atom().name);
          ids = SecurityLevel(std::move(trimmed));
        }
        SecurityLevel out = meet(inv_level, ids);
        trace_line(trace, "strong key " + key_name + ": " + inv_level.str() +
                              " + identities " + ids.str() + " = " + out.str());
        return out;
      }
      trace_line(trace, "weak key " + key_name + ": encryption ignored");
      return f_single(subject, m.payload(), ctx, trace);
    }
    default:
      // Occurrence plus structural equality leave nothing else.
      return SecurityLevel::top();
  }
}

}  // namespace

SecurityLevel f_level(const Term& subject, std::span<const Term> messages,
                      const VerificationContext& ctx, DerivationTrace* trace) {
  require_subject(subject);
  SecurityLevel acc = SecurityLevel::top();
  if (messages.empty()) {
    trace_line(trace, "F(" + subject.str() + ", {}) = {} [empty set]");
    return acc;
  }
  for (const Term& m : messages) {
    acc = meet(acc, f_single(subject, m, ctx, trace));
  }
  return acc;
}

SecurityLevel f_level(const Term& subject, const Term& message,
                      const VerificationContext& ctx, DerivationTrace* trace) {
  return f_level(subject, std::span<const Term>(&message, 1), ctx, trace);
}

SecurityLevel f_prime(const Term& subject, std::span<const Term> messages,
                      const VerificationContext& ctx, DerivationTrace* trace) {
  require_subject(subject);
  std::vector<Term> derived;
  derived.reserve(messages.size());
  std::set<std::string> removed;
  for (const Term& m : messages) {
    auto d = erase_vars(subject, m, &removed);
    derived.push_back(d ? std::move(*d) : Term::unit());
  }
  if (trace) {
    if (removed.empty()) {
      trace->add("no variable in the neighborhood of " + subject.str() +
                 " to be removed by derivation");
    } else {
      for (const auto& v : removed) {
        trace->add("variable " + v + " removed by derivation");
      }
    }
  }
  return f_level(subject, derived, ctx, trace);
}

SecurityLevel f_prime(const Term& subject, const Term& message,
                      const VerificationContext& ctx, DerivationTrace* trace) {
  return f_prime(subject, std::span<const Term>(&message, 1), ctx, trace);
}

SecurityLevel upper_bound(const Term& subject, const Term& m,
                          const VerificationContext& ctx, DerivationTrace* trace) {
  return f_prime(subject, m, ctx, trace);
}

SecurityLevel lower_bound(const Term& subject, const Term& m,
                          std::span<const Term> patterns,
                          const VerificationContext& ctx, DerivationTrace* trace) {
  require_subject(subject);
  const std::set<std::string> taken_vars = vars_of(m);
  const std::set<std::string> taken_sessions = sessions_of(m);

  SecurityLevel acc = SecurityLevel::top();
  bool matched = false;
  for (const Term& pattern : patterns) {
    if (same_pattern_class(pattern, m)) {
      // The message's own class: the identity substitution applies.
      trace_line(trace, "origin " + pattern.str() + " [own class]");
      acc = meet(acc, f_prime(subject, m, ctx, trace));
      matched = true;
      continue;
    }
    Term renamed = rename_apart(pattern, taken_vars, taken_sessions);
    auto mgu = unify(m, renamed);
    if (!mgu) continue;
    Term instantiated = mgu->apply(renamed);
    trace_line(trace, "origin " + pattern.str() + " unifies via " + mgu->str() +
                          " -> " + instantiated.str());
    acc = meet(acc, f_prime(subject, instantiated, ctx, trace));
    matched = true;
  }
  if (!matched) throw EmptyUnifiableSetError(m.str());
  return acc;
}

}  // namespace wfa
