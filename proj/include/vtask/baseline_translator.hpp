#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vtask/corpus_io.hpp"
#include "vtask/meta.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/template_engine.hpp"

namespace vtask {

struct TranslatorOptions {
  bool include_held_out = false;  // also match held-out templates
  GenConfig gen;                  // bounds for the invariant check on recovered metas
};

/// A recovered task and the templates it was read through (one per segment
/// for multi-tasks).
struct ParseOutcome {
  TaskMeta meta;
  std::vector<std::string> template_ids;
};

/// Rule-based inverse of render_english. Stateless after construction and
/// safe to share between threads.
class BaselineTranslator {
 public:
  BaselineTranslator(const Registry& registry, const Lexicon& lexicon,
                     TranslatorOptions options = {});

  /// Throws Error(no_match) with the furthest matched position, or
  /// Error(ambiguous_match) listing the candidate template ids.
  ParseOutcome parse(std::string_view english) const;
  std::string translate(std::string_view english) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Collapses whitespace runs to one space, trims, and rewrites 'x' quoting as
/// `x'.
std::string normalize_english(std::string_view english);

/// Translates every pair whose split is in `splits`. Failures become empty
/// predictions so the scorer can still count them.
Predictions translate_corpus(const BaselineTranslator& translator, const Corpus& corpus,
                             const std::set<Split>& splits, int jobs = 1);

}  // namespace vtask
