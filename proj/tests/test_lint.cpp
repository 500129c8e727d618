#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_support.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/verilog_emit.hpp"
#include "vtask/verilog_lint.hpp"

namespace vtask {
namespace {

std::vector<TokenKind> kinds(std::string_view source) {
  std::vector<TokenKind> out;
  for (const Token& t : tokenize(source)) out.push_back(t.kind);
  return out;
}

TEST(Tokenize, ContinuousAssign) {
  using K = TokenKind;
  EXPECT_EQ(kinds("assign c = !(a | b);"),
            (std::vector<K>{K::keyword, K::ident, K::op, K::op, K::punct, K::ident, K::op, K::ident,
                            K::punct, K::punct}));
}

TEST(Tokenize, SizedLiteralAndComment) {
  const auto lit = tokenize("3'b110");
  ASSERT_EQ(lit.size(), 1u);
  EXPECT_EQ(lit[0].kind, TokenKind::sized_literal);
  EXPECT_EQ(lit[0].text, "3'b110");

  const auto com = tokenize("// assume clock clk");
  ASSERT_EQ(com.size(), 1u);
  EXPECT_EQ(com[0].kind, TokenKind::comment);
}

TEST(Tokenize, PositionsAndErrors) {
  const auto toks = tokenize("reg q;\n  q $");
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[3].line, 2);
  EXPECT_EQ(toks[3].column, 3);
  EXPECT_EQ(toks[4].kind, TokenKind::error);
}

TEST(Check, CallButtonListingIsClean) {
  EXPECT_TRUE(lint(testing::kCallButtonListing).empty());
  EXPECT_TRUE(lint(testing::kCallButtonVerilog).empty());
}

TEST(Check, MissingSemicolon) {
  const auto issues = lint("assign c = a & b");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, LintIssue::Kind::syntax);
  EXPECT_EQ(issues[0].line, 1);
}

TEST(Check, TopLevelNonblocking) {
  const auto issues = lint("reg q;\nq <= a;");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, LintIssue::Kind::placement);
  EXPECT_EQ(issues[0].line, 2);
  EXPECT_EQ(issues[0].column, 1);
}

TEST(Check, ContinuousAssignInsideAlways) {
  const auto issues = lint("always @(posedge c) begin\n  assign q = a;\nend");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, LintIssue::Kind::placement);
}

TEST(Check, UndeclaredRegisterTarget) {
  const auto issues = lint("always @(posedge c) begin\n  q <= a;\nend");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, LintIssue::Kind::declaration);
}

TEST(PrintParse, FixpointOnEmitterOutput) {
  for (TaskClass c : kAllClasses) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      RngStream rng = derive_rng(5, to_string(c), i);
      const std::string v = emit(sample_meta(c, rng, GenConfig{}));
      const auto tree = parse_verilog(v);
      ASSERT_TRUE(tree.has_value()) << v;
      const std::string printed = print_verilog(*tree);
      EXPECT_EQ(printed, v);
      const auto again = parse_verilog(printed);
      ASSERT_TRUE(again.has_value());
      EXPECT_EQ(*again, *tree);
    }
  }
}

TEST(PrintParse, ReindentsListing) {
  const auto tree = parse_verilog(testing::kCallButtonListing);
  ASSERT_TRUE(tree.has_value());
  EXPECT_EQ(print_verilog(*tree), testing::kCallButtonVerilog);
}

TEST(ClassifyError, Categories) {
  EXPECT_EQ(classify_error("assign c = a;", "assign c = a;"), ErrorClass::exact);
  EXPECT_EQ(classify_error("assign c =a;", "assign c = a;"), ErrorClass::exact);
  EXPECT_EQ(classify_error("assign c = !(a|b);", "assign c = !(a&b);"), ErrorClass::operator_mismatch);
  EXPECT_EQ(classify_error("assign c = a &", "assign c = a & b;"), ErrorClass::syntax);
  EXPECT_EQ(classify_error("assign c = a;", "assign c = a & b;"), ErrorClass::structural_mismatch);
}

TEST(ClassifyError, ResetGuardReplacedByEnable) {
  RegisterMeta r;
  r.reg = SignalRef{"q"};
  r.input = Expr::var("d");
  r.clock = SignalRef{"c"};
  r.enable = ControlSignal{SignalRef{"e"}, std::nullopt};
  r.reset = ResetSpec{ControlSignal{SignalRef{"r", 1, ActiveLevel::high}, std::nullopt}, true};
  const std::string reference = emit(TaskMeta{r});
  std::string prediction = reference;
  const auto at = prediction.find("if(r)");
  ASSERT_NE(at, std::string::npos);
  prediction.replace(at, 5, "if(e)");
  EXPECT_EQ(classify_error(prediction, reference), ErrorClass::identifier_mismatch);
}

TEST(ErrorClassNames, RoundTrip) {
  for (ErrorClass c : {ErrorClass::exact, ErrorClass::syntax, ErrorClass::structural_mismatch,
                       ErrorClass::operator_mismatch, ErrorClass::identifier_mismatch}) {
    EXPECT_EQ(parse_error_class(to_string(c)), c);
  }
  EXPECT_FALSE(parse_error_class("nope").has_value());
}

}  // namespace
}  // namespace vtask
