#include "vtask/verilog_lint.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <unordered_set>

namespace vtask {

namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> words = {
      "assign", "reg",   "wire",   "logic",   "enum",    "always",  "posedge",
      "negedge", "or",   "begin",  "end",     "if",      "else",    "case",
      "casez",  "casex", "unique", "endcase", "default", "module",  "endmodule",
      "input",  "output", "initial", "integer", "parameter",
  };
  return words;
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '$'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool base_char(char c) {
  return c == 'b' || c == 'B' || c == 'o' || c == 'O' || c == 'd' || c == 'D' || c == 'h' ||
         c == 'H';
}
bool literal_digit(char c) {
  return digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F') || c == 'x' || c == 'X' ||
         c == 'z' || c == 'Z' || c == '_' || c == '?';
}

constexpr std::array<std::string_view, 12> kLongOps = {"<=", ">=", "==", "!=", "&&", "||",
                                                       "~^", "^~", "~&", "~|", "<<", ">>"};
constexpr std::string_view kShortOps = "!~&|^+-*/%<>=?";
constexpr std::string_view kPunct = "()[]{};,:@#.";

struct ParseFail {
  std::string message;
  int line;
  int column;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Node program() {
    Node root{Node::Kind::program, {}, {}, 1};
    while (!at_end_raw()) root.children.push_back(item());
    return root;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  bool at_end_raw() const { return pos_ >= tokens_.size(); }

  void skip_comments() {
    while (pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::comment) ++pos_;
  }

  const Token* peek(std::size_t ahead = 0) const {
    std::size_t i = pos_;
    for (std::size_t n = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokenKind::comment) continue;
      if (n++ == ahead) return &tokens_[i];
    }
    return nullptr;
  }

  int line() {
    const Token* t = peek();
    if (t) return t->line;
    return tokens_.empty() ? 1 : tokens_.back().line;
  }

  int column() {
    const Token* t = peek();
    if (t) return t->column;
    return tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size());
  }

  [[noreturn]] void fail(const std::string& message) { throw ParseFail{message, line(), column()}; }

  std::string describe(const Token* t) {
    if (!t) return "end of input";
    return "'" + t->text + "'";
  }

  bool is(std::string_view text, std::size_t ahead = 0) {
    const Token* t = peek(ahead);
    return t && t->kind != TokenKind::error && t->text == text;
  }

  Token take() {
    skip_comments();
    const Token* t = peek();
    if (!t) fail("unexpected end of input");
    if (t->kind == TokenKind::error) fail("invalid character '" + t->text + "'");
    ++pos_;
    return *t;
  }

  Token expect(std::string_view text) {
    if (!is(text)) fail("expected '" + std::string(text) + "' but found " + describe(peek()));
    return take();
  }

  Node identifier() {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::ident) fail("expected identifier but found " + describe(t));
    Token tok = take();
    return Node{Node::Kind::ident, tok.text, {}, tok.line, tok.column};
  }

  Node item() {
    if (tokens_[pos_].kind == TokenKind::comment) return comment();
    if (is("always")) return always();
    return statement_like(true);
  }

  Node comment() {
    const Token& t = tokens_[pos_++];
    return Node{Node::Kind::comment, t.text, {}, t.line, t.column};
  }

  // Declarations and assignments, accepted at top level and inside blocks so
  // misplacements reach check() rather than failing the parse.
  Node statement_like(bool top_level) {
    if (is("assign")) return assign();
    if (is("reg") || is("wire") || is("logic")) return net_decl();
    if (is("enum")) return enum_decl();
    const Token* t = peek();
    if (t && t->kind == TokenKind::ident && (is("<=", 1) || is("=", 1))) return procedural_assign();
    if (top_level) fail("unexpected " + describe(t) + " at top level");
    fail("unexpected " + describe(t) + " in statement");
  }

  Node assign() {
    const Token start = take();
    Node n{Node::Kind::assign, {}, {}, start.line, start.column};
    n.children.push_back(identifier());
    expect("=");
    n.children.push_back(expr());
    expect(";");
    return n;
  }

  Node net_decl() {
    Token kw = take();
    Node n{Node::Kind::reg_decl, kw.text, {}, kw.line, kw.column};
    std::optional<Node> range;
    if (is("[")) {
      take();
      Node r{Node::Kind::range, {}, {}, kw.line, kw.column};
      r.children.push_back(number());
      expect(":");
      r.children.push_back(number());
      expect("]");
      range = std::move(r);
    }
    n.children.push_back(identifier());
    if (range) n.children.push_back(std::move(*range));
    expect(";");
    return n;
  }

  Node number() {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::number) fail("expected number but found " + describe(t));
    Token tok = take();
    return Node{Node::Kind::number, tok.text, {}, tok.line, tok.column};
  }

  Node enum_decl() {
    const Token start = take();
    Node n{Node::Kind::enum_decl, {}, {}, start.line, start.column};
    expect("{");
    std::vector<Node> members;
    members.push_back(identifier());
    while (is(",")) {
      take();
      members.push_back(identifier());
    }
    expect("}");
    n.children.push_back(identifier());
    for (Node& m : members) n.children.push_back(std::move(m));
    expect(";");
    return n;
  }

  Node always() {
    const Token start = take();
    Node n{Node::Kind::always, {}, {}, start.line, start.column};
    expect("@");
    expect("(");
    n.children.push_back(event());
    while (is("or") || is(",")) {
      take();
      n.children.push_back(event());
    }
    expect(")");
    n.children.push_back(statement());
    return n;
  }

  Node event() {
    Node n{Node::Kind::event, {}, {}, line(), column()};
    if (is("posedge") || is("negedge")) n.text = take().text;
    n.children.push_back(identifier());
    return n;
  }

  Node statement() {
    if (!at_end_raw() && tokens_[pos_].kind == TokenKind::comment) return comment();
    if (is("begin")) {
      const Token start = take();
    Node n{Node::Kind::block, {}, {}, start.line, start.column};
      while (!is("end")) {
        if (!peek()) fail("missing 'end'");
        n.children.push_back(statement());
      }
      take();
      return n;
    }
    if (is("if")) {
      const Token start = take();
    Node n{Node::Kind::if_stmt, {}, {}, start.line, start.column};
      expect("(");
      n.children.push_back(expr());
      expect(")");
      n.children.push_back(statement());
      if (is("else")) {
        take();
        n.children.push_back(statement());
      }
      return n;
    }
    if (is("unique") || is("case")) {
      Node n{Node::Kind::case_stmt, {}, {}, line(), column()};
      if (is("unique")) n.text = take().text;
      expect("case");
      expect("(");
      n.children.push_back(expr());
      expect(")");
      while (!is("endcase")) {
        if (!peek()) fail("missing 'endcase'");
        n.children.push_back(case_item());
      }
      take();
      return n;
    }
    return statement_like(false);
  }

  Node case_item() {
    Node n{Node::Kind::case_item, {}, {}, line(), column()};
    const Token* t = peek();
    if (is("default")) {
      Token d = take();
      n.children.push_back(Node{Node::Kind::ident, d.text, {}, d.line, d.column});
    } else if (t && (t->kind == TokenKind::number || t->kind == TokenKind::sized_literal)) {
      Token v = take();
      n.children.push_back(Node{Node::Kind::literal, v.text, {}, v.line, v.column});
    } else {
      n.children.push_back(identifier());
    }
    expect(":");
    n.children.push_back(statement());
    return n;
  }

  Node procedural_assign() {
    Node target = identifier();
    Token op = take();
    Node n{Node::Kind::nonblocking, op.text, {}, target.line, target.column};
    n.children.push_back(std::move(target));
    n.children.push_back(expr());
    expect(";");
    return n;
  }

  static int precedence(std::string_view op) {
    static const std::map<std::string_view, int> table = {
        {"||", 1}, {"&&", 2}, {"|", 3},  {"~|", 3}, {"^", 4},  {"~^", 4}, {"^~", 4},
        {"&", 5},  {"~&", 5}, {"==", 6}, {"!=", 6}, {"<", 7},  {"<=", 7}, {">", 7},
        {">=", 7}, {"<<", 8}, {">>", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10},
        {"%", 10},
    };
    const auto it = table.find(op);
    return it == table.end() ? 0 : it->second;
  }

  Node expr(int min_prec = 1) {
    Node lhs = unary();
    while (true) {
      const Token* t = peek();
      if (!t || t->kind != TokenKind::op) break;
      const int prec = precedence(t->text);
      if (prec < min_prec) break;
      Token op = take();
      Node rhs = expr(prec + 1);
      Node n{Node::Kind::binary, op.text, {}, op.line, op.column};
      n.children.push_back(std::move(lhs));
      n.children.push_back(std::move(rhs));
      lhs = std::move(n);
    }
    return lhs;
  }

  Node unary() {
    static const std::set<std::string_view> kUnary = {"!", "~", "-", "&", "|", "^", "~&", "~|", "~^"};
    const Token* t = peek();
    if (t && t->kind == TokenKind::op && kUnary.contains(t->text)) {
      Token op = take();
      Node n{Node::Kind::unary, op.text, {}, op.line, op.column};
      n.children.push_back(unary());
      return n;
    }
    return primary();
  }

  Node primary() {
    const Token* t = peek();
    if (!t) fail("expected expression but found end of input");
    if (t->kind == TokenKind::error) fail("invalid character '" + t->text + "'");
    if (t->kind == TokenKind::ident) return identifier();
    if (t->kind == TokenKind::number) return number();
    if (t->kind == TokenKind::sized_literal) {
      Token v = take();
      return Node{Node::Kind::literal, v.text, {}, v.line, v.column};
    }
    if (is("(")) {
      const Token start = take();
    Node n{Node::Kind::paren, {}, {}, start.line, start.column};
      n.children.push_back(expr());
      expect(")");
      return n;
    }
    fail("expected expression but found " + describe(t));
  }
};

// --- checks -------------------------------------------------------------

enum class DeclKind { net, reg, enum_var, enum_member };

struct Checker {
  std::vector<LintIssue>& issues;
  std::map<std::string, DeclKind> declared;
  std::map<std::string, int> declared_later;  // name -> declaration line (whole program)
  std::map<std::string, std::set<std::string>> enum_members;

  void issue(LintIssue::Kind kind, std::string message, const Node& at) {
    issues.push_back({kind, std::move(message), at.line, at.column});
  }

  void read(const Node& e) {
    if (e.kind == Node::Kind::ident) {
      if (!declared.contains(e.text) && declared_later.contains(e.text)) {
        issue(LintIssue::Kind::declaration, "'" + e.text + "' is read before it is declared", e);
      }
      return;
    }
    for (const Node& c : e.children) read(c);
  }

  void declare(const std::string& name, DeclKind kind, const Node& at) {
    if (declared.contains(name)) {
      issue(LintIssue::Kind::declaration, "duplicate declaration of '" + name + "'", at);
      return;
    }
    declared.emplace(name, kind);
  }

  void top(const Node& n) {
    switch (n.kind) {
      case Node::Kind::comment: break;
      case Node::Kind::assign: continuous(n); break;
      case Node::Kind::reg_decl:
        declare(n.children[0].text, n.text == "wire" ? DeclKind::net : DeclKind::reg, n.children[0]);
        break;
      case Node::Kind::enum_decl: enum_decl(n); break;
      case Node::Kind::always:
        for (std::size_t i = 0; i + 1 < n.children.size(); ++i) read(n.children[i]);
        stmt(n.children.back());
        break;
      case Node::Kind::nonblocking:
        issue(LintIssue::Kind::placement,
              "procedural assignment to '" + n.children[0].text + "' outside an always block", n);
        break;
      default:
        issue(LintIssue::Kind::placement, "statement not allowed at top level", n);
        break;
    }
  }

  void enum_decl(const Node& n) {
    const std::string& var = n.children[0].text;
    auto& members = enum_members[var];
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      declare(n.children[i].text, DeclKind::enum_member, n.children[i]);
      members.insert(n.children[i].text);
    }
    declare(var, DeclKind::enum_var, n.children[0]);
  }

  void continuous(const Node& n) {
    const std::string& target = n.children[0].text;
    const auto it = declared.find(target);
    const bool is_reg = (it != declared.end() && it->second != DeclKind::net) ||
                        (it == declared.end() && declared_later.contains(target));
    if (is_reg) {
      issue(LintIssue::Kind::declaration,
            "continuous assignment to register '" + target + "'", n);
    }
    read(n.children[1]);
  }

  void stmt(const Node& n) {
    switch (n.kind) {
      case Node::Kind::comment: break;
      case Node::Kind::block:
        for (const Node& c : n.children) stmt(c);
        break;
      case Node::Kind::if_stmt:
        read(n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) stmt(n.children[i]);
        break;
      case Node::Kind::case_stmt: case_stmt(n); break;
      case Node::Kind::nonblocking: {
        const std::string& target = n.children[0].text;
        const auto it = declared.find(target);
        if (it == declared.end() ||
            (it->second != DeclKind::reg && it->second != DeclKind::enum_var)) {
          issue(LintIssue::Kind::declaration,
                "procedural assignment to undeclared register '" + target + "'", n);
        }
        read(n.children[1]);
        break;
      }
      case Node::Kind::assign:
        issue(LintIssue::Kind::placement, "continuous assignment inside an always block", n);
        break;
      default:
        issue(LintIssue::Kind::placement, "declaration inside an always block", n);
        break;
    }
  }

  void case_stmt(const Node& n) {
    const Node& subject = n.children[0];
    read(subject);
    const std::set<std::string>* members = nullptr;
    if (subject.kind == Node::Kind::ident) {
      if (auto it = enum_members.find(subject.text); it != enum_members.end()) {
        members = &it->second;
      }
    }
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      const Node& item = n.children[i];
      const Node& label = item.children[0];
      if (members && label.kind == Node::Kind::ident && label.text != "default" &&
          !members->contains(label.text)) {
        issue(LintIssue::Kind::declaration,
              "case label '" + label.text + "' is not a state of '" + subject.text + "'", label);
      }
      stmt(item.children[1]);
    }
  }
};

void collect_declarations(const Node& program, std::map<std::string, int>& out) {
  for (const Node& n : program.children) {
    if (n.kind == Node::Kind::reg_decl && n.text != "wire") out.emplace(n.children[0].text, n.line);
    if (n.kind == Node::Kind::enum_decl) {
      for (const Node& c : n.children) out.emplace(c.text, n.line);
    }
  }
}

// --- printing -----------------------------------------------------------

struct Printer {
  std::vector<std::string> lines;

  void emit(int indent, const std::string& text) {
    lines.push_back(std::string(static_cast<std::size_t>(indent) * 2, ' ') + text);
  }

  static std::string expr(const Node& e) {
    switch (e.kind) {
      case Node::Kind::binary:
        return expr(e.children[0]) + " " + e.text + " " + expr(e.children[1]);
      case Node::Kind::unary: return e.text + expr(e.children[0]);
      case Node::Kind::paren: return "(" + expr(e.children[0]) + ")";
      default: return e.text;
    }
  }

  void item(const Node& n) {
    if (n.kind == Node::Kind::always) {
      std::string head = "always @(";
      for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
        const Node& ev = n.children[i];
        if (i > 0) head += " or ";
        head += ev.text.empty() ? ev.children[0].text : ev.text + " " + ev.children[0].text;
      }
      stmt(n.children.back(), 0, head + ") ");
      return;
    }
    stmt(n, 0, "");
  }

  void block_body(const Node& block, int indent) {
    for (const Node& c : block.children) stmt(c, indent + 1, "");
  }

  void stmt(const Node& n, int indent, const std::string& prefix) {
    switch (n.kind) {
      case Node::Kind::comment: emit(indent, prefix + n.text); break;
      case Node::Kind::assign:
        emit(indent, prefix + "assign " + n.children[0].text + " = " + expr(n.children[1]) + ";");
        break;
      case Node::Kind::reg_decl: {
        std::string text = prefix + n.text;
        if (n.children.size() > 1) {
          const Node& r = n.children[1];
          text += " [" + r.children[0].text + ":" + r.children[1].text + "]";
        }
        emit(indent, text + " " + n.children[0].text + ";");
        break;
      }
      case Node::Kind::enum_decl: {
        std::string members;
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          if (i > 1) members += ", ";
          members += n.children[i].text;
        }
        emit(indent, prefix + "enum {" + members + "} " + n.children[0].text + ";");
        break;
      }
      case Node::Kind::block:
        emit(indent, prefix + "begin");
        block_body(n, indent);
        emit(indent, "end");
        break;
      case Node::Kind::if_stmt: if_stmt(n, indent, prefix); break;
      case Node::Kind::case_stmt: {
        const std::string q = n.text.empty() ? "" : n.text + " ";
        emit(indent, prefix + q + "case (" + expr(n.children[0]) + ")");
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          const Node& item = n.children[i];
          stmt(item.children[1], indent + 1, item.children[0].text + ": ");
        }
        emit(indent, "endcase");
        break;
      }
      case Node::Kind::nonblocking:
        emit(indent, prefix + n.children[0].text + " " + n.text + " " + expr(n.children[1]) + ";");
        break;
      default: emit(indent, prefix + expr(n)); break;
    }
  }

  void if_stmt(const Node& n, int indent, const std::string& prefix) {
    const std::string head = prefix + "if(" + expr(n.children[0]) + ")";
    const Node& then = n.children[1];
    const Node* other = n.children.size() > 2 ? &n.children[2] : nullptr;
    if (then.kind == Node::Kind::block) {
      emit(indent, head + " begin");
      block_body(then, indent);
      if (other) {
        stmt(*other, indent, "end else ");
      } else {
        emit(indent, "end");
      }
      return;
    }
    emit(indent, head);
    stmt(then, indent + 1, "");
    if (other) stmt(*other, indent, "else ");
  }
};

// --- classification -----------------------------------------------------

enum class Diff { none = 0, identifier = 1, op = 2, structure = 3 };

Diff compare(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return Diff::structure;
  Diff worst = Diff::none;
  if (a.text != b.text) {
    switch (a.kind) {
      case Node::Kind::binary:
      case Node::Kind::unary:
      case Node::Kind::event:
      case Node::Kind::nonblocking: worst = Diff::op; break;
      case Node::Kind::ident:
      case Node::Kind::number:
      case Node::Kind::literal:
      case Node::Kind::comment: worst = Diff::identifier; break;
      default: return Diff::structure;
    }
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    worst = std::max(worst, compare(a.children[i], b.children[i]));
    if (worst == Diff::structure) break;
  }
  return worst;
}

std::string strip_ascii_space(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') out += c;
  }
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](TokenKind kind, std::size_t length) {
    out.push_back(Token{kind, std::string(src.substr(i, length)), line, col});
    advance(length);
  };

  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      advance(1);
      continue;
    }
    const std::string_view rest = src.substr(i);
    if (rest.starts_with("//")) {
      const auto end = rest.find('\n');
      push(TokenKind::comment, end == std::string_view::npos ? rest.size() : end);
      continue;
    }
    if (rest.starts_with("/*")) {
      const auto end = rest.find("*/", 2);
      if (end == std::string_view::npos) {
        push(TokenKind::error, rest.size());
      } else {
        push(TokenKind::comment, end + 2);
      }
      continue;
    }
    if (ident_start(c)) {
      std::size_t n = 1;
      while (n < rest.size() && ident_char(rest[n])) ++n;
      const bool kw = keywords().contains(rest.substr(0, n));
      push(kw ? TokenKind::keyword : TokenKind::ident, n);
      continue;
    }
    if (digit(c) || (c == '\'' && rest.size() > 1 && base_char(rest[1]))) {
      std::size_t n = 0;
      while (n < rest.size() && (digit(rest[n]) || rest[n] == '_')) ++n;
      if (n < rest.size() && rest[n] == '\'') {
        std::size_t m = n + 1;
        if (m < rest.size() && (rest[m] == 's' || rest[m] == 'S')) ++m;
        if (m < rest.size() && base_char(rest[m])) {
          ++m;
          const std::size_t digits_start = m;
          while (m < rest.size() && literal_digit(rest[m])) ++m;
          if (m > digits_start) {
            push(TokenKind::sized_literal, m);
            continue;
          }
        }
        if (n == 0) {
          push(TokenKind::error, 1);
          continue;
        }
      }
      push(TokenKind::number, n);
      continue;
    }
    bool matched = false;
    for (std::string_view op : kLongOps) {
      if (rest.starts_with(op)) {
        push(TokenKind::op, op.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kShortOps.find(c) != std::string_view::npos) {
      push(TokenKind::op, 1);
    } else if (kPunct.find(c) != std::string_view::npos) {
      push(TokenKind::punct, 1);
    } else {
      // keep multi-byte UTF-8 sequences together
      std::size_t n = 1;
      if (static_cast<unsigned char>(c) >= 0xC0) {
        while (n < rest.size() && (static_cast<unsigned char>(rest[n]) & 0xC0) == 0x80) ++n;
      }
      push(TokenKind::error, n);
    }
  }
  return out;
}

std::string_view to_string(LintIssue::Kind kind) {
  switch (kind) {
    case LintIssue::Kind::syntax: return "syntax";
    case LintIssue::Kind::placement: return "placement";
    case LintIssue::Kind::declaration: return "declaration";
  }
  return "?";
}

std::optional<Node> parse_verilog(std::string_view source, LintIssue* error) {
  Parser parser(tokenize(source));
  try {
    return parser.program();
  } catch (const ParseFail& f) {
    if (error) *error = LintIssue{LintIssue::Kind::syntax, f.message, f.line, f.column};
    return std::nullopt;
  }
}

std::vector<LintIssue> check(const Node& program) {
  std::vector<LintIssue> issues;
  Checker checker{issues, {}, {}, {}};
  collect_declarations(program, checker.declared_later);
  for (const Node& n : program.children) checker.top(n);
  return issues;
}

std::vector<LintIssue> lint(std::string_view source) {
  LintIssue error;
  const auto program = parse_verilog(source, &error);
  if (!program) return {error};
  return check(*program);
}

std::string print_verilog(const Node& program) {
  Printer p;
  for (const Node& n : program.children) p.item(n);
  std::string out;
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += p.lines[i];
  }
  return out;
}

std::string_view to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::exact: return "exact";
    case ErrorClass::syntax: return "syntax";
    case ErrorClass::structural_mismatch: return "structural_mismatch";
    case ErrorClass::operator_mismatch: return "operator_mismatch";
    case ErrorClass::identifier_mismatch: return "identifier_mismatch";
  }
  return "?";
}

std::optional<ErrorClass> parse_error_class(std::string_view text) {
  for (ErrorClass c : {ErrorClass::exact, ErrorClass::syntax, ErrorClass::structural_mismatch,
                       ErrorClass::operator_mismatch, ErrorClass::identifier_mismatch}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

ErrorClass classify_error(std::string_view prediction, std::string_view reference) {
  if (strip_ascii_space(reference) == strip_ascii_space(prediction)) return ErrorClass::exact;
  const auto pred = parse_verilog(prediction);
  if (!pred || !check(*pred).empty()) return ErrorClass::syntax;
  const auto ref = parse_verilog(reference);
  if (!ref) return ErrorClass::structural_mismatch;
  switch (compare(*ref, *pred)) {
    case Diff::structure: return ErrorClass::structural_mismatch;
    case Diff::op: return ErrorClass::operator_mismatch;
    case Diff::identifier:
    case Diff::none: return ErrorClass::identifier_mismatch;
  }
  return ErrorClass::structural_mismatch;
}

}  // namespace vtask
