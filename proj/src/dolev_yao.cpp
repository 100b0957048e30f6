#include "wfa/dolev_yao.hpp"

#include <algorithm>
#include <stdexcept>

#include "wfa/levels.hpp"

namespace wfa {

KnowledgeSet::KnowledgeSet(std::vector<Term> ts) : terms(std::move(ts)) {
  for (const Term& t : terms) {
    if (!t.is_ground()) {
      throw std::invalid_argument("knowledge set must be ground, got " + t.str());
    }
  }
}

int term_depth(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Unit:
    case Term::Kind::Atom:
    case Term::Kind::Variable: return 0;
    case Term::Kind::Concat:
      return 1 + std::max(term_depth(t.left()), term_depth(t.right()));
    case Term::Kind::Enc:
      return 1 + std::max(term_depth(t.payload()), term_depth(t.key()));
  }
  return 0;
}

namespace {

// Splitting and decryption only; always terminates on subterms.
bool decompose_pass(std::set<Term>& known, const VerificationContext& ctx) {
  std::vector<Term> fresh;
  for (const Term& t : known) {
    if (t.is_concat()) {
      if (!known.count(t.left())) fresh.push_back(t.left());
      if (!known.count(t.right())) fresh.push_back(t.right());
    } else if (t.is_enc() && t.key().is_atom()) {
      auto inv = ctx.inverse_of(t.key().as_atom().name);
      if (!inv) continue;
      Term inv_atom = Term::atom(*inv, AtomKind::Key);
      if (known.count(inv_atom) && !known.count(t.payload())) {
        fresh.push_back(t.payload());
      }
    }
  }
  for (Term& t : fresh) known.insert(std::move(t));
  return !fresh.empty();
}

}  // namespace

std::set<Term> derive_closure(const KnowledgeSet& k,
                              const VerificationContext& ctx, int depth) {
  std::set<Term> known(k.terms.begin(), k.terms.end());
  known.insert(ctx.intruder_knowledge.begin(), ctx.intruder_knowledge.end());
  while (decompose_pass(known, ctx)) {
  }

  // Composition never creates atoms, so no new decryption can unlock
  // after the initial fixpoint; grow layer by layer, composing each
  // term against the rest exactly once.
  std::set<Term> composed;
  for (;;) {
    std::vector<std::pair<Term, int>> all, frontier;
    std::vector<Term> keys_all, keys_front;
    for (const Term& t : known) {
      int d = term_depth(t);
      all.emplace_back(t, d);
      bool is_key = t.is_atom() && t.as_atom().kind == AtomKind::Key;
      if (is_key) keys_all.push_back(t);
      if (!composed.count(t)) {
        frontier.emplace_back(t, d);
        if (is_key) keys_front.push_back(t);
      }
    }
    if (frontier.empty()) break;
    composed = known;

    std::vector<Term> fresh;
    auto offer = [&](Term t) {
      if (!known.count(t)) fresh.push_back(std::move(t));
    };
    for (const auto& [a, da] : frontier) {
      for (const auto& [b, db] : all) {
        if (1 + std::max(da, db) > depth) continue;
        offer(Term::concat(a, b));
        offer(Term::concat(b, a));
      }
      if (1 + da <= depth) {
        for (const Term& key : keys_all) offer(Term::enc(a, key));
      }
    }
    for (const auto& [t, dt] : all) {
      if (1 + dt > depth) continue;
      for (const Term& key : keys_front) offer(Term::enc(t, key));
    }
    for (Term& t : fresh) known.insert(std::move(t));
    while (decompose_pass(known, ctx)) {
    }
  }
  return known;
}

InvarianceResult check_full_invariance(const VerificationContext& ctx,
                                       const KnowledgeSet& knowledge,
                                       const Term& alpha, int depth) {
  if (!alpha.is_atom()) {
    throw std::invalid_argument("invariance subject must be an atom");
  }
  const SecurityLevel alpha_level = ctx.level_of(alpha.as_atom());

  // The escape clause: an intruder explicitly allowed to know alpha.
  for (const Term& t : ctx.intruder_knowledge) {
    if (t.is_atom() && geq(ctx.level_of(t.as_atom()), alpha_level)) {
      return {true, std::nullopt};
    }
  }

  const SecurityLevel base =
      f_level(alpha, std::span<const Term>(knowledge.terms), ctx);
  for (const Term& m : derive_closure(knowledge, ctx, depth)) {
    if (!atoms_of(m).count(alpha.as_atom())) continue;
    if (!geq(f_level(alpha, m, ctx), base)) return {false, m};
  }
  return {true, std::nullopt};
}

WellFormedResult check_well_formed(
    const VerificationContext& ctx,
    const std::function<std::optional<WellFormedSample>()>& next_sample) {
  WellFormedResult result;

  auto check_one = [&](auto&& level_fn, const char* name,
                       const WellFormedSample& s) -> bool {
    // Subject in clear.
    std::vector<Term> just_alpha{s.alpha};
    if (level_fn(s.alpha, std::span<const Term>(just_alpha)) != ctx.bottom()) {
      result.counterexample = std::string(name) + "(" + s.alpha.str() +
                              ", {alpha}) is not bottom";
      return false;
    }
    // Meet over set union.
    std::vector<Term> both = s.m1;
    both.insert(both.end(), s.m2.begin(), s.m2.end());
    SecurityLevel lhs = level_fn(s.alpha, std::span<const Term>(both));
    SecurityLevel rhs = meet(level_fn(s.alpha, std::span<const Term>(s.m1)),
                             level_fn(s.alpha, std::span<const Term>(s.m2)));
    if (lhs != rhs) {
      result.counterexample = std::string(name) + " union law fails for " +
                              s.alpha.str();
      return false;
    }
    // Absent subject.
    std::vector<Term> without;
    for (const Term& t : both) {
      if (!occurs(s.alpha, t)) without.push_back(t);
    }
    if (!level_fn(s.alpha, std::span<const Term>(without)).is_top()) {
      result.counterexample = std::string(name) + " absent subject is not top";
      return false;
    }
    return true;
  };

  while (auto sample = next_sample()) {
    ++result.samples;
    auto plain = [&](const Term& a, std::span<const Term> m) {
      return f_level(a, m, ctx);
    };
    auto derived = [&](const Term& a, std::span<const Term> m) {
      return f_prime(a, m, ctx);
    };
    if (!check_one(plain, "f_level", *sample) ||
        !check_one(derived, "f_prime", *sample)) {
      result.holds = false;
      return result;
    }
  }
  return result;
}

}  // namespace wfa
