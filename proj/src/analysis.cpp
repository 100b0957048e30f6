#include "wfa/analysis.hpp"

#include <algorithm>

#include "wfa/levels.hpp"

namespace wfa {

std::string to_string(AnalysisMode m) {
  return m == AnalysisMode::Tagged ? "tagged" : "general";
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::CorrectForSecrecy: return "correct_for_secrecy";
    case Conclusion::NotCertified: return "not_certified";
    case Conclusion::NotTagged: return "not_tagged";
  }
  return "?";
}

namespace {

// Atoms first (by name then session), variables after (by name); the
// order the worked derivations use.
std::vector<Term> analysis_subjects(const Term& sent) {
  std::vector<Term> subjects;
  for (const Atom& a : atoms_of(sent)) subjects.push_back(Term::atom(a));
  for (const std::string& v : vars_of(sent)) subjects.push_back(Term::variable(v));
  return subjects;
}

void warn_undeclared(const VerificationContext& ctx, const Term& subject,
                     std::vector<std::string>& warnings) {
  if (!subject.is_atom()) return;
  const Atom& a = subject.as_atom();
  if (ctx.has_level(a.name)) return;
  std::string w = "atom " + a.name + " has no declared level; assuming top";
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) {
    warnings.push_back(w);
  }
}

AnalysisReport analyze(const Protocol& p, const VerificationContext& ctx,
                       AnalysisMode mode) {
  AnalysisReport report;
  report.protocol = p.name;
  report.mode = mode;

  const std::vector<GeneralizedRole> roles = extract_generalized_roles(p, ctx);
  report.tagging = check_tagged(roles, ctx);

  if (mode == AnalysisMode::Tagged && !report.tagging.tagged) {
    report.conclusion = Conclusion::NotTagged;
    return report;
  }

  const std::vector<Term> patterns = generated_messages(roles);

  bool all_pass = true;
  for (const GeneralizedRole& role : roles) {
    for (const RuleStep& rule : rule_steps(role)) {
      for (const Term& subject : analysis_subjects(rule.sent)) {
        if (subject.is_atom()) {
          const Atom& a = subject.as_atom();
          if (a.kind == AtomKind::Key) {
            report.skipped.push_back({role.principal, rule.label, a.str(), "key atom"});
            continue;
          }
          if (a.kind == AtomKind::Identity &&
              ctx.level_of(a) == ctx.bottom()) {
            report.skipped.push_back(
                {role.principal, rule.label, a.str(), "public identity"});
            continue;
          }
          warn_undeclared(ctx, subject, report.warnings);
        }

        AtomVerdict verdict;
        verdict.role = role.principal;
        verdict.step = rule.label;
        verdict.alpha = subject.str();

        DerivationTrace trace;
        trace.add("send " + rule.sent.str());
        verdict.lhs = mode == AnalysisMode::Tagged
                          ? f_prime(subject, rule.sent, ctx, &trace)
                          : lower_bound(subject, rule.sent, patterns, ctx, &trace);
        trace.add("send level = " + verdict.lhs.str());

        if (rule.received.empty()) {
          trace.add("recv (none)");
        } else {
          for (const Term& r : rule.received) trace.add("recv " + r.str());
        }
        verdict.rhs_recv = f_prime(subject, rule.received, ctx, &trace);
        trace.add("recv level = " + verdict.rhs_recv.str());

        verdict.alpha_level = subject.is_variable()
                                  ? ctx.top()
                                  : ctx.level_of(subject.as_atom());
        verdict.pass = geq(verdict.lhs, meet(verdict.alpha_level, verdict.rhs_recv));
        trace.add("check " + verdict.lhs.str() + " >= " + verdict.alpha_level.str() +
                  " meet " + verdict.rhs_recv.str() + " : " +
                  (verdict.pass ? "pass" : "FAIL"));
        verdict.derivation = std::move(trace.lines);

        all_pass = all_pass && verdict.pass;
        report.verdicts.push_back(std::move(verdict));
      }
    }
  }

  report.conclusion =
      all_pass ? Conclusion::CorrectForSecrecy : Conclusion::NotCertified;
  return report;
}

}  // namespace

AnalysisReport analyze_tagged(const Protocol& p, const VerificationContext& ctx) {
  return analyze(p, ctx, AnalysisMode::Tagged);
}

AnalysisReport analyze_general(const Protocol& p, const VerificationContext& ctx) {
  return analyze(p, ctx, AnalysisMode::General);
}

}  // namespace wfa
