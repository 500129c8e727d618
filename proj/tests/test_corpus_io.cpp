#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "test_support.hpp"
#include "vtask/corpus_io.hpp"
#include "vtask/error.hpp"
#include "vtask/text_util.hpp"

namespace vtask {
namespace {

using testing::lexicon;
using testing::plan_of;
using testing::registry;

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

TEST(Plan, Parse) {
  const Plan p = Plan::parse("# desk\npr00 = 30\npa00 = 20\nmt00 = 53\nmt00.validate = 3\n");
  ASSERT_EQ(p.entries.size(), 3u);
  EXPECT_EQ(p.entries[0].template_id, "mt00");
  EXPECT_EQ(p.entries[0].validate, 3u);
  EXPECT_EQ(p.entries[1].template_id, "pa00");
  EXPECT_EQ(p.total(), 103u);
  EXPECT_EQ(Plan::parse(p.to_text()), p);
}

TEST(Plan, Errors) {
  EXPECT_EQ(kind_of([] { Plan::parse("pa00 = 2\npa00 = 3\n"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { Plan::parse("pa00 = x\n"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { Plan::parse("PA00 = 1\n"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { Plan::parse("pa00.validate = 1\n"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { Plan::parse("pa00 = 1\npa00.validate = 2\n"); }), ErrorKind::parse);
}

TEST(Generate, ExactCounts) {
  const Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"pa00", 10}}), 42);
  ASSERT_EQ(c.pairs.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(c.pairs[i].index, i);
    EXPECT_EQ(c.pairs[i].split, Split::unassigned);
  }
  EXPECT_EQ(c.manifest.counts.at("pa00"), 10u);
}

TEST(Generate, UnknownTemplateIsConfigError) {
  EXPECT_EQ(kind_of([] { generate_corpus(registry(), lexicon(), plan_of({{"pa99", 1}}), 42); }),
            ErrorKind::config);
}

TEST(Generate, PairMatchesCorpus) {
  const Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"pr03", 5}, {"mt00", 3}}), 7);
  for (const auto& p : c.pairs) {
    EXPECT_EQ(generate_pair(registry(), lexicon(), p.template_id, p.index, 7), p);
  }
}

TEST(Generate, HeldOutTagged) {
  const Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"pa17", 3}, {"mt01", 2}}), 7);
  for (const auto& p : c.pairs) EXPECT_EQ(p.split, Split::held_out) << p.template_id;
}

TEST(Generate, IndependentOfJobs) {
  const Plan plan = plan_of({{"pa00", 40}, {"pg02", 40}, {"dr01", 40}, {"mt00", 40}});
  const Corpus one = generate_corpus(registry(), lexicon(), plan, 42, {}, 1);
  const Corpus many = generate_corpus(registry(), lexicon(), plan, 42, {}, 8);
  EXPECT_EQ(corpus_to_jsonl(one), corpus_to_jsonl(many));
}

TEST(Split, CountsAndStability) {
  Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"pa00", 40}, {"pa17", 4}}), 42);
  Corpus shuffled = c;
  std::mt19937 g(1);
  std::ranges::shuffle(shuffled.pairs, g);
  split_corpus(c, 0.95, 42);
  split_corpus(shuffled, 0.95, 42);
  EXPECT_EQ(c, shuffled);
  EXPECT_EQ(c.manifest.split_counts.at("validate"), 2u);
  EXPECT_EQ(c.manifest.split_counts.at("train"), 38u);
  EXPECT_EQ(c.manifest.split_counts.at("held_out"), 4u);
  EXPECT_EQ(kind_of([&] { split_corpus(c, 1.0, 42); }), ErrorKind::config);
}

TEST(Split, ValidateCount) {
  EXPECT_EQ(validate_count(2000, 0.95), 100u);
  EXPECT_EQ(validate_count(3000, 0.95), 150u);
  EXPECT_EQ(validate_count(4000, 0.95), 200u);
  EXPECT_EQ(validate_count(5250, 0.95, 250), 250u);
}

TEST(SaveLoad, RoundTrip) {
  testing::TempDir dir("corpus");
  Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"da01", 6}, {"mt00", 4}}), 42);
  split_corpus(c, 0.5, 42);
  save_corpus(c, dir.path());
  EXPECT_EQ(load_corpus(dir.path()), c);
}

TEST(SaveLoad, CountMismatchIsDetected) {
  testing::TempDir dir("corpus-bad");
  const Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"pa00", 3}}), 42);
  save_corpus(c, dir.path());
  std::string lines = read_text_file(dir.path() / "corpus.jsonl");
  lines = lines.substr(0, lines.find('\n') + 1);
  write_text_file(dir.path() / "corpus.jsonl", lines);
  EXPECT_EQ(kind_of([&] { load_corpus(dir.path()); }), ErrorKind::parse);
}

TEST(Export, CallButtonRecord) {
  Corpus c;
  TaskResultPair p;
  p.template_id = "dr00";
  p.cls = TaskClass::dr;
  p.split = Split::train;
  p.english = std::string(testing::kCallButtonEnglish);
  p.verilog = std::string(testing::kCallButtonVerilog);
  c.pairs.push_back(p);
  refresh_counts(c);
  const std::string text = export_training_text(c, {});
  EXPECT_EQ(text.rfind("TASK: Write sequential code for a call button", 0), 0u);
  EXPECT_NE(text.find(" RESULT:\n// assume clock clk\n"), std::string::npos);
  EXPECT_TRUE(text.ends_with("end\n<|endofresult|>\n"));
}

TEST(Export, EmptyFilterAndRoundTrip) {
  Corpus c = generate_corpus(registry(), lexicon(), plan_of({{"pg01", 10}, {"pr00", 10}}), 3);
  EXPECT_EQ(kind_of([&] { export_training_text(c, {}); }), ErrorKind::config);
  split_corpus(c, 0.8, 3);
  const auto records = import_training_text(export_training_text(c, {}));
  std::vector<TrainingRecord> expected;
  for (const auto& p : c.pairs) {
    if (p.split == Split::train) expected.push_back({p.english, p.verilog});
  }
  EXPECT_EQ(records, expected);

  ExportOptions shuffled;
  shuffled.shuffle_seed = 5;
  auto again = import_training_text(export_training_text(c, shuffled));
  EXPECT_NE(again, expected);
  std::ranges::sort(again, {}, &TrainingRecord::english);
  std::ranges::sort(expected, {}, &TrainingRecord::english);
  EXPECT_EQ(again, expected);
}

TEST(Predictions, ParseAndErrors) {
  const Predictions p = import_predictions(
      "{\"template_id\":\"pa00\",\"index\":0,\"prediction\":\"reg q;\\nalways @(posedge c) begin\\n  q <= a;\\nend\"}\n"
      "{\"template_id\":\"mt00\",\"index\":7,\"skip\":\"token limit\"}\n");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.at(PairKey{"pa00", 0}).text, "reg q;\nalways @(posedge c) begin\n  q <= a;\nend");
  EXPECT_EQ(p.at(PairKey{"mt00", 7}).skip_reason, "token limit");
  EXPECT_EQ(import_predictions(predictions_to_jsonl(p)), p);

  try {
    import_predictions(
        "{\"template_id\":\"pa00\",\"index\":4,\"prediction\":\"x\"}\n"
        "{\"template_id\":\"pa00\",\"index\":4,\"prediction\":\"y\"}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::duplicate_key);
    EXPECT_NE(std::string(e.what()).find("pa00#4"), std::string::npos) << e.what();
  }
  try {
    import_predictions("{\"template_id\":\"pa00\",\"index\":1,\"prediction\":\"x\"}\n{oops\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { import_predictions("{\"template_id\":\"pa00\",\"index\":1}\n"); }),
            ErrorKind::parse);
}

}  // namespace
}  // namespace vtask
