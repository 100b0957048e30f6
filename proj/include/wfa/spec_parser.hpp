#ifndef WFA_SPEC_PARSER_HPP
#define WFA_SPEC_PARSER_HPP

#include <stdexcept>
#include <string>

#include "wfa/context.hpp"
#include "wfa/roles.hpp"

namespace wfa {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class SemanticError : public std::runtime_error {
 public:
  SemanticError(int line, const std::string& what)
      : std::runtime_error(std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedSpec {
  Protocol protocol;
  VerificationContext ctx;
};

/// Parses a protocol spec file. Line-oriented, '#' starts a comment:
///
///   agents A B
///   intruder I
///   key kb inverse kb_inv of B       # readers of the inverse key
///   level Na {A B}
///   public A
///   intruder-knows x
///   var X Y
///   step 1: A -> B : {Na . A . B}_kb
///   role A session i:                # optional explicit roles
///     send {Na^i . A . B}_kb
///     recv {A . B . Na^i}_ka
///
/// Every name must be declared before use. Throws ParseError (syntax)
/// or SemanticError (undeclared name, duplicate step, ...).
ParsedSpec parse_spec(const std::string& text);

}  // namespace wfa

#endif  // WFA_SPEC_PARSER_HPP
