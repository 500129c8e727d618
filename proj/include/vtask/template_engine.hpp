#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtask/meta.hpp"
#include "vtask/rng.hpp"

namespace vtask {

/// Directory holding the shipped templates/ and lexicon.txt.
std::filesystem::path default_data_dir();

/// English surface forms keyed by "<group>.<value>", e.g. "op.xnor" ->
/// {"xnor", "nxor"}, "number.3" -> {"three"}, "level.low" -> {"active-low"}.
class Lexicon {
 public:
  static Lexicon parse(std::string_view text, std::string_view origin = "<lexicon>");
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon load_default();

  /// Empty span when the key is unknown.
  std::span<const std::string> forms(std::string_view key) const;
  void set(std::string key, std::vector<std::string> forms);
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }

  /// Invariant violations: missing/empty operator entries, empty or
  /// non-lowercase surface forms.
  std::vector<std::string> validate() const;

  static std::string op_key(Op op);

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

enum class SlotKind {
  out, lhs, rhs, op,
  inputs, count, in_level, out_level, quantifier,
  place, sensor, sensor_plural, condition, device, action,
  reg, width, input, enable, enable_expr, reset, reset_expr, reset_kind, a_reset_kind,
  clock, sequence,
  system, trigger_device, trigger, trigger_action, trigger_value, output_device,
  on_phrase, off_phrase, cancel_device, cancel_action, reset_value,
};

std::string_view to_string(SlotKind kind);
std::optional<SlotKind> parse_slot_kind(std::string_view text);

struct Segment {
  enum class Kind { literal, slot, clause };

  Kind kind = Kind::literal;
  std::string text;                 // literal
  SlotKind slot = SlotKind::out;    // slot
  Feature feature = Feature::enable;  // clause guard
  bool negated = false;             // clause guard is `[?!feature ...]`
  std::vector<Segment> body;        // clause contents
};

/// Parses one template body ("Put the result of {lhs} {op} {rhs} in {out}.").
/// Throws Error(parse) on unbalanced brackets or unknown slot/feature names.
std::vector<Segment> parse_template_body(std::string_view text);

struct Template {
  std::string id;      // class prefix + two digits, e.g. "pa00"
  TaskClass cls = TaskClass::pa;
  bool trained = true;
  std::vector<Segment> body;
  std::string source;  // body as written in the registry file
};

enum class Pool { trained, non_trained, all };

/// Multi-task samples are keyed by a pool id instead of a template id:
/// "mt00" draws subtask templates from the trained pool, "mt01" from the
/// held-out pool.
std::optional<Pool> multi_pool(std::string_view id);
inline constexpr std::string_view kMultiTrainedId = "mt00";
inline constexpr std::string_view kMultiHeldOutId = "mt01";

class Registry {
 public:
  /// Reads <dir>/{pa,da,pr,dr,pg}.tpl (missing files are skipped).
  static Registry load_directory(const std::filesystem::path& dir);
  static Registry load_default();

  /// Parses one registry file whose records belong to `cls`.
  void parse_file(std::string_view text, TaskClass cls, std::string_view origin);
  void add(Template t);

  const Template* find(std::string_view id) const;
  std::vector<const Template*> templates(TaskClass cls, Pool pool) const;
  const std::vector<Template>& all() const { return templates_; }

 private:
  std::vector<Template> templates_;
};

/// Presence states of each feature that `t` can express.
Capabilities capabilities(const Template& t);

/// First feature of `meta` that `t` cannot express, if any.
std::optional<Feature> unmet_feature(const Template& t, const TaskMeta& meta);

/// Random template of class `cls` from `pool` that can express `meta`.
/// Throws Error(no_suitable_template) naming the unmet feature.
const Template& select_template(TaskClass cls, const TaskMeta& meta,
                                const Registry& registry, RngStream& rng, Pool pool);

/// Fills `t` with `meta`. Throws Error(unfilled_slot) if a slot has no value.
std::string render_english(const Template& t, const TaskMeta& meta,
                           const Lexicon& lexicon, RngStream& rng);

/// English for a multi-task: each subtask rendered with its template, joined
/// by single spaces.
std::string render_multi(const MultiMeta& meta, std::span<const Template* const> templates,
                         const Lexicon& lexicon, RngStream& rng);

struct RegistryDiagnostic {
  std::string template_id;
  std::string message;
};

/// Empty iff every template satisfies the template invariants and every slot
/// kind it uses has lexicon coverage.
std::vector<RegistryDiagnostic> validate_registry(const Registry& registry,
                                                  const Lexicon& lexicon);

/// Body text with every slot shown as `{kind}` and every clause included.
std::string template_text(const Template& t);

/// Renders a signal name with the back-quote/apostrophe convention: `a'.
std::string quote_signal(std::string_view name);

/// "[0, 1, 0]" / "[110, 100]"
std::string render_sequence(std::span<const unsigned> elements, int width);

/// Lexicon groups a slot kind draws from (for coverage checks).
std::vector<std::string> lexicon_keys_for(SlotKind kind);

}  // namespace vtask
