#include "wfa/spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace wfa {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Character-level scanner for one message, tracking the column for
// error positions.
class MessageScanner {
 public:
  MessageScanner(std::string_view text, int line, int col_offset)
      : text_(text), line_(line), col_offset_(col_offset) {}

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c, const std::string& what) {
    if (peek() != c) fail(what);
    ++pos_;
  }

  bool try_consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int number() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected number");
    }
    int value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return value;
  }

  bool at_end() { return peek() == '\0'; }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(line_, col_offset_ + static_cast<int>(pos_) + 1, what);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_offset_;
};

struct SpecBuilder {
  std::set<std::string> agents;
  std::string intruder;
  std::map<std::string, std::string> inverse;
  std::map<std::string, std::set<std::string>> inverse_readers;
  std::map<std::string, std::set<std::string>> levels;
  std::set<std::string> publics;
  std::vector<std::pair<int, std::string>> intruder_knows;  // line, name
  std::set<std::string> variables;

  std::vector<std::pair<int, ProtocolStep>> steps;  // line, step
  std::vector<GeneralizedRole> roles;
  bool in_role = false;

  bool is_agent(const std::string& n) const { return agents.count(n) > 0; }
  bool is_key(const std::string& n) const { return inverse.count(n) > 0; }
  bool is_var(const std::string& n) const { return variables.count(n) > 0; }
  bool known(const std::string& n) const {
    return is_agent(n) || is_key(n) || is_var(n);
  }

  Term make_atom(const std::string& name, std::optional<std::string> session,
                 int line) const {
    AtomKind kind = AtomKind::Nonce;
    if (is_agent(name)) kind = AtomKind::Identity;
    else if (is_key(name)) kind = AtomKind::Key;
    if (session && kind != AtomKind::Nonce) {
      throw SemanticError(line, "session tag on non-nonce " + name);
    }
    return Term::atom(name, kind, std::move(session));
  }

  Term parse_item(MessageScanner& s, int line) const {
    if (s.try_consume('{')) {
      Term payload = parse_seq(s, line);
      s.expect('}', "expected '}'");
      s.expect('_', "expected '_' and a key after '}'");
      std::string key_name = s.ident();
      if (is_var(key_name)) return Term::enc(payload, Term::variable(key_name));
      if (!is_key(key_name)) {
        throw SemanticError(line, key_name + " is not a declared key or variable");
      }
      return Term::enc(payload, Term::atom(key_name, AtomKind::Key));
    }
    if (s.try_consume('(')) {
      Term inner = parse_seq(s, line);
      s.expect(')', "expected ')'");
      return inner;
    }
    std::string name = s.ident();
    if (is_var(name)) return Term::variable(name);
    std::optional<std::string> session;
    if (s.try_consume('^')) session = s.ident();
    return make_atom(name, std::move(session), line);
  }

  Term parse_seq(MessageScanner& s, int line) const {
    Term first = parse_item(s, line);
    if (!s.try_consume('.')) return first;
    return Term::concat(first, parse_seq(s, line));
  }

  Term parse_message(std::string_view text, int line, int col_offset) const {
    MessageScanner s(text, line, col_offset);
    Term t = parse_seq(s, line);
    if (!s.at_end()) s.fail("trailing input after message");
    return t;
  }
};

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

ParsedSpec parse_spec(const std::string& text) {
  SpecBuilder b;
  std::istringstream input(text);
  std::string raw;
  int line_no = 0;
  bool saw_anything = false;

  while (std::getline(input, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> words = split_words(raw);
    if (words.empty()) continue;
    saw_anything = true;
    const std::string& head = words[0];

    if (head != "send" && head != "recv") b.in_role = false;

    if (head == "agents") {
      if (words.size() < 2) throw ParseError(line_no, 1, "agents: expected names");
      for (std::size_t i = 1; i < words.size(); ++i) b.agents.insert(words[i]);
    } else if (head == "intruder") {
      if (words.size() != 2) throw ParseError(line_no, 1, "intruder: expected one name");
      b.intruder = words[1];
      b.agents.insert(words[1]);
    } else if (head == "key") {
      // key <k> inverse <kinv> of <reader...>
      if (words.size() < 6 || words[2] != "inverse" || words[4] != "of") {
        throw ParseError(line_no, 1, "key: expected 'key k inverse kinv of A ...'");
      }
      const std::string& k = words[1];
      const std::string& kinv = words[3];
      if (b.known(k) || (k != kinv && b.known(kinv))) {
        throw SemanticError(line_no, "key name already declared");
      }
      std::set<std::string> readers;
      for (std::size_t i = 5; i < words.size(); ++i) {
        if (!b.is_agent(words[i])) {
          throw SemanticError(line_no, "undeclared agent " + words[i]);
        }
        readers.insert(words[i]);
      }
      b.inverse[k] = kinv;
      b.inverse[kinv] = k;
      b.inverse_readers[kinv] = std::move(readers);
    } else if (head == "level") {
      // level <atom> {A B}
      if (words.size() < 3) throw ParseError(line_no, 1, "level: expected 'level atom {A ...}'");
      std::string rest;
      for (std::size_t i = 2; i < words.size(); ++i) rest += words[i];
      if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}') {
        throw ParseError(line_no, 1, "level: expected braced reader list");
      }
      std::string inner = rest.substr(1, rest.size() - 2);
      std::replace(inner.begin(), inner.end(), ',', ' ');
      std::set<std::string> readers;
      for (const std::string& r : split_words(inner)) {
        if (!b.is_agent(r)) throw SemanticError(line_no, "undeclared agent " + r);
        readers.insert(r);
      }
      if (b.levels.count(words[1]) || b.publics.count(words[1])) {
        throw SemanticError(line_no, "duplicate level for " + words[1]);
      }
      b.levels[words[1]] = std::move(readers);
    } else if (head == "public") {
      if (words.size() < 2) throw ParseError(line_no, 1, "public: expected names");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (b.levels.count(words[i])) {
          throw SemanticError(line_no, "duplicate level for " + words[i]);
        }
        b.publics.insert(words[i]);
      }
    } else if (head == "intruder-knows") {
      if (words.size() < 2) throw ParseError(line_no, 1, "intruder-knows: expected names");
      for (std::size_t i = 1; i < words.size(); ++i) {
        b.intruder_knows.emplace_back(line_no, words[i]);
      }
    } else if (head == "var") {
      if (words.size() < 2) throw ParseError(line_no, 1, "var: expected names");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (b.known(words[i])) {
          throw SemanticError(line_no, words[i] + " already declared");
        }
        b.variables.insert(words[i]);
      }
    } else if (head == "step") {
      // step N: A -> B : <message>
      MessageScanner s(raw, line_no, 0);
      std::string kw = s.ident();  // "step"
      int index = 0;
      {
        char c = s.peek();
        if (!std::isdigit(static_cast<unsigned char>(c))) s.fail("expected step number");
        while (std::isdigit(static_cast<unsigned char>(s.peek()))) {
          index = index * 10 + (s.peek() - '0');
          s.expect(s.peek(), "digit");
        }
      }
      s.expect(':', "expected ':' after step number");
      std::string sender = s.ident();
      s.expect('-', "expected '->'");
      s.expect('>', "expected '->'");
      std::string receiver = s.ident();
      if (!b.is_agent(sender)) throw SemanticError(line_no, "undeclared agent " + sender);
      if (!b.is_agent(receiver)) throw SemanticError(line_no, "undeclared agent " + receiver);
      if (sender == receiver) {
        throw SemanticError(line_no, "step " + std::to_string(index) +
                                         ": sender equals receiver");
      }
      s.expect(':', "expected ':' before message");
      auto colon = raw.find(':', raw.find("->"));
      Term message = b.parse_message(raw.substr(colon + 1), line_no,
                                     static_cast<int>(colon) + 1);
      b.steps.push_back({line_no, ProtocolStep{index, sender, receiver, message}});
    } else if (head == "role") {
      // role P session i:
      if (words.size() != 4 || words[2] != "session" || words[3].back() != ':') {
        throw ParseError(line_no, 1, "role: expected 'role P session i:'");
      }
      if (!b.is_agent(words[1])) {
        throw SemanticError(line_no, "undeclared agent " + words[1]);
      }
      GeneralizedRole role;
      role.principal = words[1];
      role.session_tag = words[3].substr(0, words[3].size() - 1);
      b.roles.push_back(std::move(role));
      b.in_role = true;
    } else if (head == "send" || head == "recv") {
      if (!b.in_role || b.roles.empty()) {
        throw ParseError(line_no, 1, head + " outside a role block");
      }
      auto offset = raw.find(head) + head.size();
      Term message = b.parse_message(raw.substr(offset), line_no,
                                     static_cast<int>(offset));
      b.roles.back().events.push_back(
          {head == "send" ? Direction::Send : Direction::Recv, message});
    } else {
      throw ParseError(line_no, 1, "unknown declaration '" + head + "'");
    }
  }

  if (!saw_anything) throw ParseError(1, 1, "empty specification");
  if (b.intruder.empty()) throw SemanticError(line_no, "no intruder declared");
  if (b.steps.empty() && b.roles.empty()) {
    throw SemanticError(line_no, "no protocol steps or roles");
  }

  ParsedSpec out;
  out.ctx.agents = b.agents;
  out.ctx.intruder = b.intruder;
  out.ctx.inverse = b.inverse;
  out.ctx.variables = b.variables;

  for (const auto& [kinv, readers] : b.inverse_readers) {
    out.ctx.assigned_level[kinv] = SecurityLevel(readers);
  }
  for (const auto& [k, kinv] : b.inverse) {
    // Forward keys are public unless said otherwise.
    if (!out.ctx.assigned_level.count(k) && !b.levels.count(k) && !b.publics.count(k)) {
      out.ctx.assigned_level[k] = SecurityLevel(b.agents);
    }
  }
  for (const auto& [name, readers] : b.levels) {
    out.ctx.assigned_level[name] = SecurityLevel(readers);
  }
  for (const std::string& name : b.publics) {
    out.ctx.assigned_level[name] = SecurityLevel(b.agents);
  }
  for (const auto& [line, name] : b.intruder_knows) {
    out.ctx.intruder_knowledge.push_back(b.make_atom(name, std::nullopt, line));
  }

  std::sort(b.steps.begin(), b.steps.end(), [](const auto& x, const auto& y) {
    return x.second.index < y.second.index;
  });
  for (std::size_t i = 0; i < b.steps.size(); ++i) {
    const auto& [line, step] = b.steps[i];
    if (i > 0 && step.index == b.steps[i - 1].second.index) {
      throw SemanticError(line, "duplicate step index " + std::to_string(step.index));
    }
    if (step.index != static_cast<int>(i) + 1) {
      throw SemanticError(line, "step indices must run 1..n");
    }
    out.protocol.steps.push_back(step);
  }
  if (!b.roles.empty()) out.protocol.declared_roles = std::move(b.roles);

  out.ctx.validate();
  return out;
}

}  // namespace wfa
