#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vtask {

enum class TokenKind { ident, keyword, op, number, sized_literal, punct, comment, error };

struct Token {
  TokenKind kind = TokenKind::error;
  std::string text;
  int line = 1;
  int column = 1;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Never throws; unknown characters become TokenKind::error tokens.
std::vector<Token> tokenize(std::string_view source);

/// Generic syntax tree for the Verilog/SystemVerilog subset the emitter
/// produces. Parentheses are kept as explicit nodes so printing is faithful.
struct Node {
  enum class Kind {
    program, comment, assign, reg_decl, range, enum_decl, always, event, block,
    if_stmt, case_stmt, case_item, nonblocking, binary, unary, paren, ident, number, literal,
  };

  Kind kind = Kind::program;
  std::string text;  // operator, name, number, comment, edge keyword, case qualifier
  std::vector<Node> children;
  int line = 0;
  int column = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

struct LintIssue {
  enum class Kind { syntax, placement, declaration };
  Kind kind = Kind::syntax;
  std::string message;
  int line = 0;
  int column = 0;
};

std::string_view to_string(LintIssue::Kind kind);

/// Parses a snippet. On failure returns nullopt and fills `error` (first
/// syntax error only). Statements in the wrong place (a nonblocking
/// assignment at top level, a continuous assignment inside always) parse and
/// are reported by check().
std::optional<Node> parse_verilog(std::string_view source, LintIssue* error = nullptr);

/// Placement and declaration checks over a parsed program.
std::vector<LintIssue> check(const Node& program);

/// Syntax error (if any) followed by placement/declaration issues.
std::vector<LintIssue> lint(std::string_view source);

/// Prints a tree in the emitter's layout (two-space indentation).
std::string print_verilog(const Node& program);

enum class ErrorClass {
  exact, syntax, structural_mismatch, operator_mismatch, identifier_mismatch,
};

std::string_view to_string(ErrorClass c);
std::optional<ErrorClass> parse_error_class(std::string_view text);

/// Categorises how a prediction differs from the reference. Checked in order
/// exact > syntax (prediction has any lint diagnostic) > structural >
/// operator > identifier; whitespace is insignificant throughout.
ErrorClass classify_error(std::string_view prediction, std::string_view reference);

}  // namespace vtask
