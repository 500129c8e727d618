// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "report_fixture.hpp"
#include "test_support.hpp"
#include "vtask/baseline_translator.hpp"
#include "vtask/cli.hpp"
#include "vtask/corpus_io.hpp"
#include "vtask/evalkit.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/report.hpp"
#include "vtask/text_util.hpp"
#include "vtask/verilog_emit.hpp"
#include "vtask/verilog_lint.hpp"

namespace {

using namespace vtask;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome metric_fidelity() {
  Outcome o;
  const std::string a = strip_whitespace("assign c = a | b;");
  const std::string b = strip_whitespace("assign c = b | a;");
  const auto t0 = Clock::now();
  const double s = ro_similarity(a, b);
  const double elapsed = seconds_since(t0);
  const double identity = ro_similarity(a, a);
  if (std::abs(s - 0.833) > 0.0005) o.fail(fmt("or-swap similarity %.6f", s));
  if (identity != 1.0) o.fail(fmt("identity similarity %.17g", identity));
  if (elapsed >= 1e-3) o.fail(fmt("took %.6f s", elapsed));
  if (o.ok) o.detail = fmt("or-swap %.4f, identity 1, %.1f us", s, elapsed * 1e6);
  return o;
}

Outcome metric_oracle() {
  Outcome o;
  std::vector<std::string> strings{""};
  for (std::size_t begin = 0, len = 1; len <= 8; ++len) {
    const std::size_t end = strings.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : {'a', 'b', 'c'}) strings.push_back(strings[i] + c);
    }
    begin = end;
  }
  std::size_t pairs = 0, mismatches = 0;
  for (const std::string& a : strings) {
    for (const std::string& b : strings) {
      ++pairs;
      const double lib = ro_similarity(a, b);
      const double ref = oracle::gestalt_ratio(a, b);
      if (lib != ref) {
        if (mismatches == 0) o.fail("'" + a + "' vs '" + b + "'");
        ++mismatches;
      }
    }
  }
  if (std::abs(ro_similarity("abc", "abd") - 4.0 / 6.0) > 1e-12) o.fail("abc/abd");
  if (o.ok) o.detail = fmt("%zu strings, %zu ordered pairs identical", strings.size(), pairs);
  else o.detail += fmt(" (%zu mismatches)", mismatches);
  return o;
}

Outcome scenario_reduction() {
  Outcome o;
  static const char* names[] = {"a", "b", "c", "d"};
  std::size_t configs = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (ActiveLevel in : {ActiveLevel::high, ActiveLevel::low}) {
      for (ActiveLevel out : {ActiveLevel::high, ActiveLevel::low}) {
        for (Quantifier q : {Quantifier::any, Quantifier::all}) {
          Scenario s;
          for (std::size_t i = 0; i < n; ++i) {
            s.inputs.push_back(SignalRef{names[i], 1, in});
          }
          s.output = SignalRef{"y", 1, out};
          s.quantifier = q;
          ++configs;
          const Expr e = reduce_scenario(s);
          for (unsigned row = 0; row < (1u << n); ++row) {
            std::map<std::string, bool> env;
            for (std::size_t i = 0; i < n; ++i) env[names[i]] = (row >> i) & 1u;
            if (oracle::eval(e, env) != oracle::scenario_truth(s, env)) {
              o.fail(fmt("n=%zu row=%u: ", n, row) + emit_expr(e));
            }
          }
        }
      }
    }
  }
  auto fixture = [&](std::vector<std::string> ins, ActiveLevel out, Quantifier q, const char* want) {
    Scenario s;
    for (auto& n : ins) s.inputs.push_back(SignalRef{n, 1, ActiveLevel::low});
    s.output = SignalRef{"y", 1, out};
    s.quantifier = q;
    const std::string got = emit_expr(reduce_scenario(s));
    if (got != want) o.fail(std::string("fixture ") + want + " got " + got);
  };
  fixture({"a", "b", "c"}, ActiveLevel::high, Quantifier::any, "!(a & b & c)");
  fixture({"a", "b", "c", "d"}, ActiveLevel::low, Quantifier::any, "a & b & c & d");
  fixture({"et", "lz", "l"}, ActiveLevel::high, Quantifier::all, "!(et | lz | l)");
  if (o.ok) o.detail = fmt("%zu configurations, 3 fixtures", configs);
  return o;
}

Outcome emit_lint_closure() {
  Outcome o;
  const GenConfig cfg;
  std::size_t total = 0;
  for (TaskClass c : kAllClasses) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
      RngStream rng = derive_rng(2024, to_string(c), i);
      const std::string v = emit(sample_meta(c, rng, cfg));
      const auto issues = lint(v);
      ++total;
      if (!issues.empty()) o.fail(std::string(to_string(c)) + ": " + issues.front().message + "\n" + v);
    }
  }
  const std::string fig = emit(testing::call_button_meta());
  if (fig != testing::kCallButtonVerilog) o.fail("call-button listing differs:\n" + fig);
  if (strip_whitespace(fig) != strip_whitespace(testing::kCallButtonListing)) {
    o.fail("call-button listing differs from the typeset listing");
  }
  if (o.ok) o.detail = fmt("%zu snippets lint-clean, call-button listing exact", total);
  return o;
}

Outcome round_trip() {
  Outcome o;
  const Registry& registry = testing::registry();
  const Lexicon& lexicon = testing::lexicon();
  std::vector<std::string> ids;
  for (const Template& t : registry.all()) {
    const bool prescriptive = t.cls == TaskClass::pa || t.cls == TaskClass::pr || t.cls == TaskClass::pg;
    if ((prescriptive && t.trained) || t.cls == TaskClass::da) ids.push_back(t.id);
  }
  constexpr std::size_t kPerTemplate = 1000;
  std::map<std::string, std::size_t> counts;
  for (const auto& id : ids) counts[id] = kPerTemplate;
  Corpus corpus = generate_corpus(registry, lexicon, testing::plan_of(counts), 1234, {}, 0);
  for (auto& p : corpus.pairs) {
    if (p.split == Split::unassigned) p.split = Split::validate;
  }
  refresh_counts(corpus);
  const BaselineTranslator translator(registry, lexicon, TranslatorOptions{true, {}});
  const Predictions predictions =
      translate_corpus(translator, corpus, {Split::validate, Split::held_out}, 0);
  const EvalResult result = evaluate_run(predictions, corpus, {}, 0);
  for (const ReportRow& row : result.rows) {
    if (row.n_correct != row.n_validated) {
      o.fail(row.template_name + fmt(" %zu/%zu", row.n_correct, row.n_validated));
    }
  }
  if (result.overall.validated != ids.size() * kPerTemplate) o.fail("unexpected record count");
  if (result.overall.percent() != 100.0) {
    o.fail(fmt("overall %s%%", format_percent(result.overall.percent()).c_str()));
  }
  if (o.ok) {
    o.detail = fmt("%zu templates x %zu instances, overall %s%%", ids.size(), kPerTemplate,
                   format_percent(result.overall.percent()).c_str());
  }
  return o;
}

struct Expected {
  std::size_t train;
  std::size_t validate;
};

std::map<std::string, Expected> full_scale_table() {
  std::map<std::string, Expected> t;
  auto range = [&](const char* prefix, int lo, int hi, Expected e) {
    for (int i = lo; i <= hi; ++i) t[fmt("%s%02d", prefix, i)] = e;
  };
  range("pa", 0, 16, {1900, 100});
  range("pa", 17, 18, {0, 100});
  range("pr", 0, 9, {2850, 150});
  range("pr", 10, 11, {0, 150});
  range("pg", 1, 4, {3800, 200});
  range("pg", 5, 6, {0, 200});
  range("da", 0, 2, {3800, 200});
  range("da", 3, 3, {0, 200});
  range("dr", 0, 3, {3800, 200});
  range("dr", 4, 4, {0, 200});
  t["mt00"] = {5000, 250};
  t["mt01"] = {0, 250};
  return t;
}

/// The 1/100 plan: 20, 30 and 40 pairs per trained template, 1 or 2 per
/// held-out template, multi-task 53 (3 validated) and 3.
std::map<std::string, Expected> desk_table() {
  std::map<std::string, Expected> t;
  for (const auto& [id, e] : full_scale_table()) {
    const std::size_t validate = id.starts_with("mt") ? 3 : (e.validate + 50) / 100;
    const std::size_t count = (e.train + e.validate) / 100;
    t[id] = {e.train == 0 ? 0 : count - validate, validate};
  }
  t["mt00"] = {50, 3};
  return t;
}

Outcome check_scale(const Corpus& corpus, const std::map<std::string, Expected>& table,
                    const std::map<std::string, std::size_t>& samples) {
  Outcome o;
  std::map<std::string, Expected> got;
  for (const auto& p : corpus.pairs) {
    Expected& e = got[p.template_id];
    if (p.split == Split::train) ++e.train;
    if (p.split == Split::validate || p.split == Split::held_out) ++e.validate;
  }
  for (const auto& [id, want] : table) {
    const Expected have = got.count(id) ? got.at(id) : Expected{};
    if (have.train != want.train || have.validate != want.validate) {
      o.fail(id + fmt(" %zu/%zu, want %zu/%zu", have.train, have.validate, want.train, want.validate));
    }
  }
  if (got.size() != table.size()) o.fail(fmt("%zu templates generated", got.size()));
  for (const auto& [id, n] : samples) {
    if (corpus.manifest.counts.at(id) != n) o.fail(id + fmt(" has %zu samples", corpus.manifest.counts.at(id)));
  }
  return o;
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (code != 0) std::fprintf(stderr, "vtask %s failed: %s\n", args.back().c_str(), err.str().c_str());
  return code;
}

/// Full desk pipeline through the command line in `dir`.
bool desk_pipeline(const fs::path& dir, int jobs) {
  const std::string d = dir.string();
  const std::string plan = (testing::source_dir() / "configs" / "desk_scale.cfg").string();
  const std::vector<std::string> common{"--seed", "42", "--out-dir", d, "--jobs", std::to_string(jobs)};
  auto with = [&](std::vector<std::string> tail) {
    std::vector<std::string> args = common;
    args.insert(args.end(), tail.begin(), tail.end());
    return cli(args) == 0;
  };
  return with({"generate", "--plan", plan}) && with({"split"}) && with({"export", "--shuffle"}) &&
         with({"translate", "--corpus", d}) && with({"evaluate"}) &&
         with({"report", "--output", d + "/report.txt"});
}

Outcome full_scale() {
  Outcome o;
  const fs::path cfg = testing::source_dir() / "configs" / "full_scale.cfg";
  const auto t0 = Clock::now();
  Corpus corpus = generate_corpus(testing::registry(), testing::lexicon(), Plan::load(cfg), 42, {}, 0);
  split_corpus(corpus, kDefaultTrainFraction, 42);
  const double full = seconds_since(t0);
  o = check_scale(corpus, full_scale_table(),
                  {{"pa00", 2000}, {"pr00", 3000}, {"pg01", 4000}, {"da00", 4000}, {"dr00", 4000},
                   {"mt00", 5250}});
  if (full >= 600) o.fail(fmt("full-scale generation took %.1f s", full));

  testing::TempDir dir("accept-desk");
  const auto t1 = Clock::now();
  if (!desk_pipeline(dir.path(), 1)) o.fail("desk pipeline failed");
  const double desk = seconds_since(t1);
  if (desk >= 30) o.fail(fmt("desk pipeline took %.1f s", desk));
  const Outcome desk_counts = check_scale(load_corpus(dir.path()), desk_table(),
                  {{"pa00", 20}, {"pr00", 30}, {"pg01", 40}, {"da00", 40}, {"dr00", 40}, {"mt00", 53}});
  if (!desk_counts.ok) o.fail("desk: " + desk_counts.detail);
  if (o.ok) {
    o.detail = fmt("%zu pairs, train/validate counts exact, full %.1f s, desk pipeline %.1f s",
                   corpus.pairs.size(), full, desk);
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  testing::TempDir a("accept-j1"), b("accept-j4"), c("accept-j1b");
  if (!desk_pipeline(a.path(), 1) || !desk_pipeline(b.path(), 4) || !desk_pipeline(c.path(), 1)) {
    o.fail("pipeline failed");
    return o;
  }
  const char* files[] = {"corpus.jsonl", "manifest.json", "train.txt", "predictions.jsonl",
                         "records.jsonl", "report.txt"};
  for (const char* f : files) {
    const std::string x = read_text_file(a.path() / f);
    if (x != read_text_file(b.path() / f)) o.fail(std::string(f) + " differs between --jobs 1 and 4");
    if (x != read_text_file(c.path() / f)) o.fail(std::string(f) + " differs between runs");
  }
  if (o.ok) o.detail = "corpus, manifest, export, predictions, records, report identical (jobs 1/1/4)";
  return o;
}

Outcome report_layout() {
  Outcome o;
  const std::string text = render_report(testing::synthetic_result(), ReportFormat::text);
  const auto golden = testing::source_dir() / "tests" / "golden" / "report.txt";
  if (text != read_text_file(golden)) o.fail("text report differs from tests/golden/report.txt");
  const std::string csv = render_report(testing::synthetic_result(), ReportFormat::csv);
  if (csv.substr(0, csv.find('\n')) != "Type,Template Name,# Trained,# Validated,# Correct,Avg. Error R-O") {
    o.fail("csv header");
  }
  if (o.ok) o.detail = "text report equals golden file, csv header in column order";
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"metric-fidelity", 1.0, metric_fidelity},
      {"metric-oracle-equivalence", 120.0, metric_oracle},
      {"scenario-reduction", 10.0, scenario_reduction},
      {"emit-lint-closure", 60.0, emit_lint_closure},
      {"round-trip-oracle", 120.0, round_trip},
      {"full-scale-plan", 630.0, full_scale},
      {"determinism", 300.0, determinism},
      {"report-layout", 10.0, report_layout},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= c.limit_seconds) o.fail(fmt("exceeded %.0f s", c.limit_seconds));
    std::printf("%s %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", c.name, elapsed, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
