#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vtask/meta.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/template_engine.hpp"

namespace vtask {

inline constexpr std::string_view kToolVersion = "vtask 1.0.0";
inline constexpr std::string_view kDefaultSentinel = "<|endofresult|>";
inline constexpr double kDefaultTrainFraction = 0.95;

/// `unassigned` marks pairs of trained templates before split_corpus runs;
/// pairs of held-out templates are tagged `held_out` at generation.
enum class Split { unassigned, train, validate, held_out };
std::string_view to_string(Split s);
std::optional<Split> parse_split(std::string_view text);

struct PairKey {
  std::string template_id;
  std::uint64_t index = 0;

  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

std::string to_string(const PairKey& key);

struct TaskResultPair {
  std::string template_id;
  std::uint64_t index = 0;
  TaskClass cls = TaskClass::pa;
  Split split = Split::unassigned;
  std::string english;
  std::string verilog;

  PairKey key() const { return {template_id, index}; }
  friend bool operator==(const TaskResultPair&, const TaskResultPair&) = default;
};

struct PlanEntry {
  std::string template_id;
  std::size_t count = 0;
  std::optional<std::size_t> validate;  // overrides round(count * (1 - f))

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

/// Per-template sample counts. Text form, one entry per line:
///   pa00 = 2000
///   mt00 = 5250
///   mt00.validate = 250
struct Plan {
  std::vector<PlanEntry> entries;  // sorted by template id

  static Plan parse(std::string_view text, std::string_view origin = "<plan>");
  static Plan load(const std::filesystem::path& path);
  std::string to_text() const;
  const PlanEntry* find(std::string_view id) const;
  std::size_t total() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

struct CorpusManifest {
  std::uint64_t seed = 0;
  std::string version{kToolVersion};
  Plan plan;
  GenConfig gen;
  std::optional<double> train_fraction;  // set once split
  std::map<std::string, std::size_t> counts;
  std::map<std::string, std::size_t> split_counts;  // keyed by split name

  friend bool operator==(const CorpusManifest&, const CorpusManifest&) = default;
};

struct Corpus {
  CorpusManifest manifest;
  std::vector<TaskResultPair> pairs;  // sorted by (template_id, index)

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Recomputes manifest.counts / manifest.split_counts from the pairs.
void refresh_counts(Corpus& corpus);

/// Generates plan.entries[*].count pairs per template at indices 0..count-1.
/// Multi-task ids (mt00/mt01) draw subtask templates from the trained or
/// held-out pool. Output is independent of `jobs`.
Corpus generate_corpus(const Registry& registry, const Lexicon& lexicon, const Plan& plan,
                       std::uint64_t master_seed, const GenConfig& gen = {}, int jobs = 1);

/// Generates the single pair (template_id, index) exactly as generate_corpus
/// would.
TaskResultPair generate_pair(const Registry& registry, const Lexicon& lexicon,
                             std::string_view template_id, std::uint64_t index,
                             std::uint64_t master_seed, const GenConfig& gen = {});

/// Number of validation pairs for a trained template with `count` pairs.
std::size_t validate_count(std::size_t count, double train_fraction,
                           std::optional<std::size_t> override_count = std::nullopt);

/// Tags trained-template pairs train/validate, per template, by a seeded
/// shuffle of the sorted indices. Held-out pairs keep their tag. Throws
/// Error(config) unless 0 < train_fraction < 1.
void split_corpus(Corpus& corpus, double train_fraction, std::uint64_t seed);

/// Writes <dir>/corpus.jsonl and <dir>/manifest.json.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);
/// Reads a corpus directory and checks the manifest counts against the pairs.
Corpus load_corpus(const std::filesystem::path& dir);

std::string corpus_to_jsonl(const Corpus& corpus);
std::string manifest_to_json(const CorpusManifest& manifest);

struct ExportOptions {
  std::set<Split> splits{Split::train};
  std::string sentinel{kDefaultSentinel};
  std::optional<std::uint64_t> shuffle_seed;  // default order: (template_id, index)
};

/// "TASK: <english> RESULT:\n<verilog>\n<sentinel>\n" per record.
/// Throws Error(config) when no pair matches the split filter.
std::string export_training_text(const Corpus& corpus, const ExportOptions& options);

struct TrainingRecord {
  std::string english;
  std::string verilog;

  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

std::vector<TrainingRecord> import_training_text(std::string_view text,
                                                 std::string_view sentinel = kDefaultSentinel);

struct Prediction {
  std::string text;
  std::optional<std::string> skip_reason;  // explicit skip (e.g. "token limit")

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

using Predictions = std::map<PairKey, Prediction>;

/// One JSON object per line:
///   {"template_id": "pa00", "index": 3, "prediction": "assign c = a & b;"}
///   {"template_id": "mt00", "index": 7, "skip": "token limit"}
/// Throws Error(parse) with the line number, Error(duplicate_key) naming the key.
Predictions import_predictions(std::string_view text, std::string_view origin = "<predictions>");
Predictions load_predictions(const std::filesystem::path& path);
std::string predictions_to_jsonl(const Predictions& predictions);

}  // namespace vtask
