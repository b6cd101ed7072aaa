#pragma once

// Surface syntax for .foq files.
//
//   program := decl* "::" stmt*
//   decl    := "decl" NAME ("[" NAME "]")? "(" NAME ")" "{" stmt+ "}" ","?
//   stmt    := "skip" ";" | qexpr "*=" op ";" | "{" stmt+ "}"
//            | "if" bexpr "then" branch "else" branch
//            | "qcase" sexpr "[" iexpr ("," iexpr)* "]" "of" "{" LABEL "->" stmt+ ("," LABEL "->" stmt+)* "}"
//            | "call" NAME ("[" iexpr "]")? "(" sexpr ")" ";"
//            | "H" "(" qexpr ")" ";"? | "CNOT" "(" qexpr "," qexpr ")" ";"? | "SWAP" "(" qexpr "," qexpr ")" ";"?
//   op      := "NOT" | "H" | ("RY" | "PH") "[" phase "]" "(" iexpr ")"
//   sexpr   := "nil" | NAME | "(" sexpr ")" | sexpr "\" "[" iexpr ("," iexpr)* "]"
//
// A branch that starts with "{" is exactly that block; otherwise it extends
// up to the next "else", ",", "}" or end of input. Comments run from "//" or
// "#" to the end of the line.

#include <optional>
#include <string>
#include <vector>

#include "foq/syntax.hpp"

namespace foq {

struct ParseError {
    SourceSpan span;
    std::vector<std::string> expected;
    std::string found;

    std::string message() const;
    std::string to_string() const { return span.to_string() + ": " + message(); }
};

struct ParseResult {
    std::optional<Program> program;
    std::vector<ParseError> errors;

    bool ok() const { return program.has_value(); }
};

class ParseException : public std::runtime_error {
  public:
    explicit ParseException(std::vector<ParseError> errors);
    const std::vector<ParseError>& errors() const { return errors_; }

  private:
    std::vector<ParseError> errors_;
};

ParseResult parse_program(const std::string& text, const std::string& file = "");

/// Throws ParseException on failure.
Program parse_program_or_throw(const std::string& text, const std::string& file = "");

/// Parses a single statement sequence against main variable `q`; used by tests.
StmtPtr parse_statement(const std::string& text);

/// Expands a k-qubit quantum case into nested binary ones. `branches` maps
/// each bitstring label of length k to its statement.
StmtPtr expand_multiqcase(const SetExprPtr& set, const std::vector<IntExprPtr>& indices,
                          const std::vector<std::pair<std::string, StmtPtr>>& branches, SourceSpan span = {});

// Macro expansions shared with the algebra translation.
StmtPtr macro_h(const QubitExpr& q, SourceSpan span = {});
StmtPtr macro_cnot(const QubitExpr& control, const QubitExpr& target, SourceSpan span = {});
StmtPtr macro_swap(const QubitExpr& a, const QubitExpr& b, SourceSpan span = {});

}  // namespace foq
