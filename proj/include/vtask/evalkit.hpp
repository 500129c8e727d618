#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vtask/corpus_io.hpp"
#include "vtask/template_engine.hpp"
#include "vtask/verilog_lint.hpp"

namespace vtask {

/// Characters matched by gestalt pattern matching: take the longest common
/// contiguous block (ties: earliest in `a`, then earliest in `b`), then
/// recurse on the remainders left and right of it.
std::size_t matching_characters(std::string_view a, std::string_view b);

/// 2*M / (|a| + |b|); 1.0 for two empty strings. Defined on the ordered pair.
double ro_similarity(std::string_view a, std::string_view b);

/// Removes every code point with the Unicode White_Space property. Bytes that
/// are not valid UTF-8 are kept as they are.
std::string strip_whitespace(std::string_view text);

struct PairScore {
  bool correct = false;
  double similarity = 0.0;
  ErrorClass error_class = ErrorClass::exact;
};

PairScore score_pair(std::string_view prediction, std::string_view reference);

struct EvalRecord {
  PairKey key;
  TaskClass cls = TaskClass::pa;
  bool trained = true;  // template belongs to the trained pool
  bool skipped = false;
  bool correct = false;
  double similarity = 0.0;
  ErrorClass error_class = ErrorClass::exact;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

struct ReportRow {
  TaskClass cls = TaskClass::pa;
  std::string template_name;
  bool trained = true;
  std::size_t n_trained = 0;
  std::size_t n_validated = 0;
  std::size_t n_correct = 0;
  std::optional<double> avg_error_ro;  // mean similarity over incorrect records

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Tally {
  std::size_t correct = 0;
  std::size_t validated = 0;

  std::optional<double> percent() const;
};

struct ClassSummary {
  TaskClass cls = TaskClass::pa;
  Tally trained;
  Tally non_trained;
};

struct EvalResult {
  std::vector<EvalRecord> records;    // sorted by key
  std::vector<ReportRow> rows;        // sorted by class (pa, pr, pg, da, dr, mt) then id
  std::vector<ClassSummary> classes;  // same class order, classes with rows only
  Tally overall;
};

struct EvalFilter {
  std::set<Split> splits{Split::validate, Split::held_out};
  std::set<std::string> templates;  // empty: all
};

/// Scores one prediction per filtered corpus key. Throws
/// Error(missing_predictions) listing every key without a prediction.
EvalResult evaluate_run(const Predictions& predictions, const Corpus& corpus,
                        const EvalFilter& filter = {}, int jobs = 1);

/// Builds rows and aggregates from scored records; `n_trained` maps template
/// id to its training pair count.
EvalResult summarize(std::vector<EvalRecord> records,
                     const std::map<std::string, std::size_t>& n_trained);

/// R-O similarity of the templates' bodies with slots as `{kind}` and all
/// optional clauses included.
double template_similarity(const Template& a, const Template& b);

/// Records file written by `evaluate`: one {"type":"template",...} line per
/// report row carrying its training count, then one {"type":"record",...}
/// line per scored pair.
std::string records_to_jsonl(const EvalResult& result);
/// Inverse of records_to_jsonl; rebuilds rows and aggregates via summarize.
EvalResult parse_records(std::string_view text, std::string_view origin = "<records>");

/// Report ordering of classes: pa, pr, pg, da, dr, mt.
int report_rank(TaskClass c);

}  // namespace vtask
