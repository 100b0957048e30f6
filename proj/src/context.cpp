#include "wfa/context.hpp"

#include <algorithm>
#include <sstream>

namespace wfa {

std::string SecurityLevel::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& r : readers_) {
    if (!first) os << ",";
    first = false;
    os << r;
  }
  os << "}";
  return os.str();
}

bool geq(const SecurityLevel& l1, const SecurityLevel& l2) {
  return std::includes(l2.readers().begin(), l2.readers().end(),
                       l1.readers().begin(), l1.readers().end());
}

SecurityLevel meet(const SecurityLevel& l1, const SecurityLevel& l2) {
  std::set<std::string> out = l1.readers();
  out.insert(l2.readers().begin(), l2.readers().end());
  return SecurityLevel(std::move(out));
}

SecurityLevel join(const SecurityLevel& l1, const SecurityLevel& l2) {
  std::set<std::string> out;
  std::set_intersection(l1.readers().begin(), l1.readers().end(),
                        l2.readers().begin(), l2.readers().end(),
                        std::inserter(out, out.begin()));
  return SecurityLevel(std::move(out));
}

SecurityLevel VerificationContext::level_of_name(const std::string& name) const {
  auto it = assigned_level.find(name);
  return it == assigned_level.end() ? SecurityLevel::top() : it->second;
}

std::optional<std::string> VerificationContext::inverse_of(
    const std::string& key_name) const {
  auto it = inverse.find(key_name);
  if (it == inverse.end()) return std::nullopt;
  return it->second;
}

bool VerificationContext::holds_inverse(const std::string& principal,
                                        const std::string& key_name) const {
  auto inv = inverse_of(key_name);
  if (!inv) return false;
  return level_of_name(*inv).readers().count(principal) > 0;
}

void VerificationContext::validate() const {
  if (intruder.empty() || !agents.count(intruder)) {
    throw ContextError("intruder is not part of the agent universe");
  }
  for (const auto& [k, kinv] : inverse) {
    auto back = inverse.find(kinv);
    if (back == inverse.end() || back->second != k) {
      throw ContextError("key inverse map is not involutive at " + k);
    }
  }
  for (const auto& [name, level] : assigned_level) {
    for (const auto& reader : level.readers()) {
      if (!agents.count(reader)) {
        throw ContextError("level of " + name + " names unknown agent " + reader);
      }
    }
  }
  for (const Term& t : intruder_knowledge) {
    if (!t.is_ground()) {
      throw ContextError("intruder knowledge contains a variable: " + t.str());
    }
  }
}

}  // namespace wfa
