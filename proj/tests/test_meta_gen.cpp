#include <gtest/gtest.h>

#include <algorithm>
#include <regex>
#include <set>
#include <string>

#include "vtask/error.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/rng.hpp"

namespace vtask {
namespace {

TEST(DeriveRng, Reproducible) {
  RngStream a = derive_rng(42, "pa00", 0);
  RngStream b = derive_rng(42, "pa00", 0);
  RngStream c = derive_rng(42, "pa00", 1);
  RngStream d = derive_rng(43, "pa00", 0);
  RngStream e = derive_rng(42, "pa01", 0);
  const auto first = a.next();
  EXPECT_EQ(first, b.next());
  EXPECT_NE(first, c.next());
  EXPECT_NE(first, d.next());
  EXPECT_NE(first, e.next());
}

TEST(RngStream, BoundedDraws) {
  RngStream rng(1);
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    const int v = rng.between(2, 4);
    ASSERT_GE(v, 2);
    ASSERT_LE(v, 4);
    seen.insert(v);
    const double u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(SampleIdentifier, ShapeAndReservedWords) {
  const std::regex shape("[a-z][a-z0-9]{0,2}");
  RngStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    std::set<std::string> taken;
    const std::string name = sample_identifier(rng, taken);
    ASSERT_TRUE(std::regex_match(name, shape)) << name;
    ASSERT_FALSE(is_reserved_word(name)) << name;
  }
  EXPECT_TRUE(is_reserved_word("or"));
  EXPECT_TRUE(is_reserved_word("reg"));
  EXPECT_TRUE(is_reserved_word("clk"));
  EXPECT_FALSE(is_valid_identifier("and"));
  EXPECT_FALSE(is_valid_identifier("abcd"));
  EXPECT_FALSE(is_valid_identifier("1a"));
  EXPECT_TRUE(is_valid_identifier("yxo"));
}

TEST(SampleIdentifier, DistinctWithinTask) {
  RngStream rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::string> taken;
    for (int i = 0; i < 5; ++i) sample_identifier(rng, taken);
    ASSERT_EQ(taken.size(), 5u);
  }
}

TEST(SampleMeta, MultiTaskShape) {
  const GenConfig cfg;
  for (std::uint64_t i = 0; i < 500; ++i) {
    RngStream rng = derive_rng(42, "mt00", i);
    const TaskMeta m = sample_meta(TaskClass::mt, rng, cfg);
    const auto& multi = std::get<MultiMeta>(m.node);
    ASSERT_GE(multi.subtasks.size(), 2u);
    ASSERT_LE(multi.subtasks.size(), 4u);
    for (const TaskMeta& sub : multi.subtasks) {
      ASSERT_NE(class_of(sub), TaskClass::dr);
      ASSERT_NE(class_of(sub), TaskClass::mt);
    }
    ASSERT_TRUE(check_invariants(m, cfg).empty());
  }
}

TEST(SampleMeta, SequenceLengths) {
  const GenConfig cfg;
  for (std::uint64_t i = 0; i < 500; ++i) {
    RngStream rng = derive_rng(42, "pg01", i);
    const auto g = std::get<SeqGenMeta>(sample_meta(TaskClass::pg, rng, cfg).node);
    ASSERT_GE(g.elements.size(), 2u);
    ASSERT_LE(g.elements.size(), 4u);
    for (unsigned e : g.elements) ASSERT_LT(e, 1u << g.out.width);
  }
}

TEST(SampleMeta, InvariantsHoldForEveryClass) {
  const GenConfig cfg;
  for (TaskClass c : kAllClasses) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      RngStream rng = derive_rng(1, to_string(c), i);
      const TaskMeta m = sample_meta(c, rng, cfg);
      ASSERT_EQ(class_of(m), c);
      const auto problems = check_invariants(m, cfg);
      ASSERT_TRUE(problems.empty()) << to_string(c) << "#" << i << ": " << problems.front();
    }
  }
}

TEST(SampleMeta, CapabilitiesAreHonoured) {
  Capabilities caps;
  caps[Feature::reset].absent = false;
  caps[Feature::reset_sync].present = false;
  const GenConfig cfg;
  for (std::uint64_t i = 0; i < 300; ++i) {
    RngStream rng = derive_rng(2, "pr", i);
    const TaskMeta m = sample_meta(TaskClass::pr, rng, cfg, caps);
    ASSERT_TRUE(has_feature(m, Feature::reset));
    ASSERT_TRUE(has_feature(m, Feature::reset_async));
  }
}

TEST(SampleMeta, DepthOneForbidsPrescriptiveAssignments) {
  GenConfig cfg;
  cfg.expr_depth_max = 1;
  RngStream rng(0);
  EXPECT_THROW(sample_meta(TaskClass::pa, rng, cfg), Error);
}

TEST(CheckInvariants, FlagsBadMetas) {
  AssignmentMeta a;
  a.target = SignalRef{"and"};
  a.source = Expr::binop(Op::And, Expr::var("x"), Expr::var("y"));
  EXPECT_FALSE(check_invariants(TaskMeta{a}).empty());

  a.target = SignalRef{"x"};
  const auto reused = check_invariants(TaskMeta{a});
  const auto mentions = [&](std::string_view text) {
    return std::ranges::any_of(reused, [&](const std::string& m) { return m.find(text) != std::string::npos; });
  };
  EXPECT_TRUE(mentions("reads its own output"));
  EXPECT_TRUE(mentions("more than one role"));

  RegisterMeta r;
  r.reg = SignalRef{"q", 4};
  r.input = Expr::var("d");
  r.setting = RegisterSetting{};
  EXPECT_FALSE(check_invariants(TaskMeta{r}).empty());
}

TEST(GenConfig, Validate) {
  EXPECT_NO_THROW(GenConfig{}.validate());
  GenConfig bad;
  bad.seq_len_min = 5;
  EXPECT_THROW(bad.validate(), Error);
  GenConfig prob;
  prob.p_reset = 1.5;
  EXPECT_THROW(prob.validate(), Error);
  EXPECT_EQ(gen_config_fields().size(), 19u);
}

}  // namespace
}  // namespace vtask
