#include "vtask/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <regex>

#include "vtask/error.hpp"
#include "vtask/parallel.hpp"
#include "vtask/rng.hpp"
#include "vtask/text_util.hpp"
#include "vtask/verilog_emit.hpp"

namespace vtask {

using ojson = nlohmann::ordered_json;

namespace {

std::string dump(const ojson& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

bool valid_template_id(std::string_view id) {
  static const std::regex kId("[a-z]{2}[0-9]{2}");
  return std::regex_match(id.begin(), id.end(), kId);
}

std::optional<std::size_t> parse_count(std::string_view text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

ojson gen_to_json(const GenConfig& gen) {
  ojson j = ojson::object();
  for (const GenConfigField& f : gen_config_fields()) {
    if (f.int_member) {
      j[std::string(f.name)] = gen.*f.int_member;
    } else {
      j[std::string(f.name)] = gen.*f.real_member;
    }
  }
  return j;
}

GenConfig gen_from_json(const ojson& j) {
  GenConfig gen;
  for (const GenConfigField& f : gen_config_fields()) {
    const std::string key(f.name);
    if (!j.contains(key)) continue;
    if (f.int_member) {
      gen.*f.int_member = j.at(key).get<int>();
    } else {
      gen.*f.real_member = j.at(key).get<double>();
    }
  }
  return gen;
}

TaskClass class_for_id(std::string_view id) {
  if (multi_pool(id)) return TaskClass::mt;
  if (const auto c = parse_task_class(id.substr(0, 2))) return *c;
  throw Error(ErrorKind::config, "cannot derive a task class from id '" + std::string(id) + "'");
}

}  // namespace

std::string_view to_string(Split s) {
  switch (s) {
    case Split::unassigned: return "unassigned";
    case Split::train: return "train";
    case Split::validate: return "validate";
    case Split::held_out: return "held_out";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view text) {
  for (Split s : {Split::unassigned, Split::train, Split::validate, Split::held_out}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string to_string(const PairKey& key) {
  return key.template_id + "#" + std::to_string(key.index);
}

// --- plan -----------------------------------------------------------------

Plan Plan::parse(std::string_view text, std::string_view origin) {
  std::map<std::string, PlanEntry> entries;
  std::map<std::string, std::pair<std::size_t, int>> overrides;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::parse, where + ": expected '<template id> = <count>'");
    }
    std::string key(trim(line.substr(0, eq)));
    const auto value = parse_count(trim(line.substr(eq + 1)));
    if (!value) throw Error(ErrorKind::parse, where + ": count must be a non-negative integer");
    bool is_override = false;
    if (key.ends_with(".validate")) {
      key.resize(key.size() - std::string_view(".validate").size());
      is_override = true;
    }
    if (!valid_template_id(key)) {
      throw Error(ErrorKind::parse, where + ": invalid template id '" + key + "'");
    }
    if (is_override) {
      if (!overrides.try_emplace(key, *value, line_no).second) {
        throw Error(ErrorKind::parse, where + ": duplicate entry '" + key + ".validate'");
      }
    } else if (!entries.try_emplace(key, PlanEntry{key, *value, std::nullopt}).second) {
      throw Error(ErrorKind::parse, where + ": duplicate entry '" + key + "'");
    }
  }
  for (const auto& [id, value] : overrides) {
    const auto it = entries.find(id);
    const std::string where = std::string(origin) + ":" + std::to_string(value.second);
    if (it == entries.end()) {
      throw Error(ErrorKind::parse, where + ": '" + id + ".validate' without a count for '" + id + "'");
    }
    if (value.first > it->second.count) {
      throw Error(ErrorKind::parse, where + ": validate count exceeds the sample count of '" + id + "'");
    }
    it->second.validate = value.first;
  }
  Plan plan;
  for (auto& [id, entry] : entries) plan.entries.push_back(std::move(entry));
  return plan;
}

Plan Plan::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.string());
}

std::string Plan::to_text() const {
  std::string out;
  for (const PlanEntry& e : entries) {
    out += e.template_id + " = " + std::to_string(e.count) + "\n";
    if (e.validate) out += e.template_id + ".validate = " + std::to_string(*e.validate) + "\n";
  }
  return out;
}

const PlanEntry* Plan::find(std::string_view id) const {
  for (const PlanEntry& e : entries) {
    if (e.template_id == id) return &e;
  }
  return nullptr;
}

std::size_t Plan::total() const {
  std::size_t n = 0;
  for (const PlanEntry& e : entries) n += e.count;
  return n;
}

// --- generation -----------------------------------------------------------

void refresh_counts(Corpus& corpus) {
  corpus.manifest.counts.clear();
  corpus.manifest.split_counts.clear();
  for (const TaskResultPair& p : corpus.pairs) {
    ++corpus.manifest.counts[p.template_id];
    ++corpus.manifest.split_counts[std::string(to_string(p.split))];
  }
}

TaskResultPair generate_pair(const Registry& registry, const Lexicon& lexicon,
                             std::string_view template_id, std::uint64_t index,
                             std::uint64_t master_seed, const GenConfig& gen) {
  TaskResultPair pair;
  pair.template_id = std::string(template_id);
  pair.index = index;
  RngStream rng = derive_rng(master_seed, template_id, index);
  try {
    TaskMeta meta;
    if (const auto pool = multi_pool(template_id)) {
      meta = sample_meta(TaskClass::mt, rng, gen);
      const auto& multi = std::get<MultiMeta>(meta.node);
      std::vector<const Template*> chosen;
      for (const TaskMeta& sub : multi.subtasks) {
        chosen.push_back(&select_template(class_of(sub), sub, registry, rng, *pool));
      }
      pair.english = render_multi(multi, chosen, lexicon, rng);
      pair.cls = TaskClass::mt;
      pair.split = *pool == Pool::trained ? Split::unassigned : Split::held_out;
    } else {
      const Template* t = registry.find(template_id);
      if (!t) {
        throw Error(ErrorKind::config, "unknown template id '" + std::string(template_id) + "'");
      }
      meta = sample_meta(t->cls, rng, gen, capabilities(*t));
      if (const auto unmet = unmet_feature(*t, meta)) {
        throw Error(ErrorKind::no_suitable_template,
                    "sampled task needs feature '" + std::string(to_string(*unmet)) +
                        "' that the template cannot express");
      }
      pair.english = render_english(*t, meta, lexicon, rng);
      pair.cls = t->cls;
      pair.split = t->trained ? Split::unassigned : Split::held_out;
    }
    pair.verilog = emit(meta);
  } catch (const Error& e) {
    throw Error(e.kind(), to_string(pair.key()) + ": " + e.what());
  }
  return pair;
}

Corpus generate_corpus(const Registry& registry, const Lexicon& lexicon, const Plan& plan,
                       std::uint64_t master_seed, const GenConfig& gen, int jobs) {
  gen.validate();
  for (const PlanEntry& e : plan.entries) {
    if (!multi_pool(e.template_id) && !registry.find(e.template_id)) {
      throw Error(ErrorKind::config, "plan references unknown template '" + e.template_id + "'");
    }
  }
  std::vector<PairKey> keys;
  keys.reserve(plan.total());
  for (const PlanEntry& e : plan.entries) {
    for (std::size_t i = 0; i < e.count; ++i) keys.push_back({e.template_id, i});
  }
  std::sort(keys.begin(), keys.end());

  Corpus corpus;
  corpus.manifest.seed = master_seed;
  corpus.manifest.plan = plan;
  corpus.manifest.gen = gen;
  corpus.pairs.resize(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    corpus.pairs[i] = generate_pair(registry, lexicon, keys[i].template_id, keys[i].index,
                                    master_seed, gen);
  });
  refresh_counts(corpus);
  return corpus;
}

// --- split ----------------------------------------------------------------

std::size_t validate_count(std::size_t count, double train_fraction,
                           std::optional<std::size_t> override_count) {
  if (override_count) return std::min(*override_count, count);
  const auto v = std::llround(static_cast<double>(count) * (1.0 - train_fraction));
  return static_cast<std::size_t>(std::clamp<long long>(v, 0, static_cast<long long>(count)));
}

void split_corpus(Corpus& corpus, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::config, "train fraction must lie strictly between 0 and 1");
  }
  std::sort(corpus.pairs.begin(), corpus.pairs.end(),
            [](const TaskResultPair& a, const TaskResultPair& b) { return a.key() < b.key(); });
  std::size_t start = 0;
  while (start < corpus.pairs.size()) {
    const std::string& id = corpus.pairs[start].template_id;
    std::size_t end = start;
    while (end < corpus.pairs.size() && corpus.pairs[end].template_id == id) ++end;
    const bool held_out = corpus.pairs[start].split == Split::held_out;
    if (!held_out) {
      const std::size_t n = end - start;
      const PlanEntry* entry = corpus.manifest.plan.find(id);
      const std::size_t n_validate =
          validate_count(n, train_fraction, entry ? entry->validate : std::nullopt);
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = start + i;
      RngStream rng = derive_rng(seed, id + "/split", 0);
      for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      for (std::size_t k = 0; k < n; ++k) {
        corpus.pairs[order[k]].split = k < n_validate ? Split::validate : Split::train;
      }
    }
    start = end;
  }
  corpus.manifest.train_fraction = train_fraction;
  refresh_counts(corpus);
}

// --- persistence ----------------------------------------------------------

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const TaskResultPair& p : corpus.pairs) {
    ojson j;
    j["template_id"] = p.template_id;
    j["index"] = p.index;
    j["class"] = std::string(to_string(p.cls));
    j["split"] = std::string(to_string(p.split));
    j["english"] = p.english;
    j["verilog"] = p.verilog;
    out += dump(j) + "\n";
  }
  return out;
}

std::string manifest_to_json(const CorpusManifest& m) {
  ojson j;
  j["version"] = m.version;
  j["seed"] = m.seed;
  j["train_fraction"] = m.train_fraction ? ojson(*m.train_fraction) : ojson(nullptr);
  ojson plan = ojson::array();
  for (const PlanEntry& e : m.plan.entries) {
    ojson entry;
    entry["template_id"] = e.template_id;
    entry["count"] = e.count;
    if (e.validate) entry["validate"] = *e.validate;
    plan.push_back(entry);
  }
  j["plan"] = plan;
  j["gen"] = gen_to_json(m.gen);
  j["counts"] = m.counts;
  j["split_counts"] = m.split_counts;
  return j.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create directory '" + dir.string() + "': " + ec.message());
  write_text_file(dir / "corpus.jsonl", corpus_to_jsonl(corpus));
  write_text_file(dir / "manifest.json", manifest_to_json(corpus.manifest));
}

Corpus load_corpus(const std::filesystem::path& dir) {
  Corpus corpus;
  const auto manifest_path = dir / "manifest.json";
  const auto corpus_path = dir / "corpus.jsonl";
  try {
    const ojson j = ojson::parse(read_text_file(manifest_path));
    CorpusManifest& m = corpus.manifest;
    m.version = j.at("version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("train_fraction").is_null()) m.train_fraction = j.at("train_fraction").get<double>();
    for (const ojson& e : j.at("plan")) {
      PlanEntry entry{e.at("template_id").get<std::string>(), e.at("count").get<std::size_t>(),
                      std::nullopt};
      if (e.contains("validate")) entry.validate = e.at("validate").get<std::size_t>();
      m.plan.entries.push_back(std::move(entry));
    }
    m.gen = gen_from_json(j.at("gen"));
    m.counts = j.at("counts").get<std::map<std::string, std::size_t>>();
    m.split_counts = j.at("split_counts").get<std::map<std::string, std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, manifest_path.string() + ": " + e.what());
  }

  const std::string text = read_text_file(corpus_path);
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = corpus_path.string() + ":" + std::to_string(line_no);
    try {
      const ojson j = ojson::parse(line);
      TaskResultPair p;
      p.template_id = j.at("template_id").get<std::string>();
      p.index = j.at("index").get<std::uint64_t>();
      const auto cls = parse_task_class(j.at("class").get<std::string>());
      const auto split_tag = parse_split(j.at("split").get<std::string>());
      if (!cls || !split_tag) throw Error(ErrorKind::parse, where + ": unknown class or split");
      p.cls = *cls;
      p.split = *split_tag;
      p.english = j.at("english").get<std::string>();
      p.verilog = j.at("verilog").get<std::string>();
      corpus.pairs.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, where + ": " + e.what());
    }
  }

  const CorpusManifest stored = corpus.manifest;
  refresh_counts(corpus);
  if (stored.counts != corpus.manifest.counts ||
      stored.split_counts != corpus.manifest.split_counts) {
    throw Error(ErrorKind::parse, manifest_path.string() +
                                      ": manifest counts do not match the stored pairs");
  }
  std::vector<PairKey> keys;
  for (const TaskResultPair& p : corpus.pairs) keys.push_back(p.key());
  std::sort(keys.begin(), keys.end());
  if (const auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
    throw Error(ErrorKind::duplicate_key, corpus_path.string() + ": duplicate pair " + to_string(*dup));
  }
  std::sort(corpus.pairs.begin(), corpus.pairs.end(),
            [](const TaskResultPair& a, const TaskResultPair& b) { return a.key() < b.key(); });
  return corpus;
}

// --- training text --------------------------------------------------------

std::string export_training_text(const Corpus& corpus, const ExportOptions& options) {
  if (options.sentinel.empty() || options.sentinel.find('\n') != std::string::npos) {
    throw Error(ErrorKind::config, "sentinel must be a non-empty single line");
  }
  std::vector<const TaskResultPair*> selected;
  for (const TaskResultPair& p : corpus.pairs) {
    if (options.splits.contains(p.split)) selected.push_back(&p);
  }
  if (selected.empty()) throw Error(ErrorKind::config, "no pairs match the export split filter");
  std::sort(selected.begin(), selected.end(),
            [](const TaskResultPair* a, const TaskResultPair* b) { return a->key() < b->key(); });
  if (options.shuffle_seed) {
    RngStream rng(*options.shuffle_seed);
    for (std::size_t i = selected.size(); i > 1; --i) {
      std::swap(selected[i - 1], selected[rng.below(i)]);
    }
  }
  std::string out;
  for (const TaskResultPair* p : selected) {
    out += "TASK: " + p->english + " RESULT:\n" + p->verilog + "\n" + options.sentinel + "\n";
  }
  return out;
}

std::vector<TrainingRecord> import_training_text(std::string_view text, std::string_view sentinel) {
  std::vector<TrainingRecord> out;
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::vector<std::string_view> current;
  int line_no = 0;
  int record_start = 1;
  for (std::string_view line : lines) {
    ++line_no;
    if (line != sentinel) {
      if (current.empty()) record_start = line_no;
      current.push_back(line);
      continue;
    }
    const std::string where = "training text line " + std::to_string(record_start);
    if (current.empty()) throw Error(ErrorKind::parse, where + ": empty record");
    std::string_view head = current.front();
    constexpr std::string_view kTask = "TASK: ";
    constexpr std::string_view kResult = " RESULT:";
    if (!head.starts_with(kTask) || !head.ends_with(kResult) ||
        head.size() < kTask.size() + kResult.size()) {
      throw Error(ErrorKind::parse, where + ": expected 'TASK: <english> RESULT:'");
    }
    TrainingRecord r;
    r.english = std::string(head.substr(kTask.size(), head.size() - kTask.size() - kResult.size()));
    for (std::size_t i = 1; i < current.size(); ++i) {
      if (i > 1) r.verilog += '\n';
      r.verilog += current[i];
    }
    out.push_back(std::move(r));
    current.clear();
  }
  if (!current.empty()) {
    throw Error(ErrorKind::parse, "training text line " + std::to_string(record_start) +
                                      ": record not terminated by the sentinel line");
  }
  return out;
}

// --- predictions ----------------------------------------------------------

Predictions import_predictions(std::string_view text, std::string_view origin) {
  Predictions out;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("template_id") || !j["template_id"].is_string() ||
        !j.contains("index") || !j["index"].is_number_unsigned()) {
      throw Error(ErrorKind::parse, where + ": record needs string 'template_id' and unsigned 'index'");
    }
    const bool has_pred = j.contains("prediction");
    const bool has_skip = j.contains("skip");
    if (has_pred == has_skip) {
      throw Error(ErrorKind::parse, where + ": record needs exactly one of 'prediction' or 'skip'");
    }
    const ojson& value = has_pred ? j["prediction"] : j["skip"];
    if (!value.is_string()) throw Error(ErrorKind::parse, where + ": prediction/skip must be a string");
    PairKey key{j["template_id"].get<std::string>(), j["index"].get<std::uint64_t>()};
    Prediction p;
    if (has_pred) {
      p.text = value.get<std::string>();
    } else {
      p.skip_reason = value.get<std::string>();
    }
    const std::string key_text = to_string(key);
    if (!out.emplace(std::move(key), std::move(p)).second) {
      throw Error(ErrorKind::duplicate_key, where + ": duplicate prediction for key " + key_text);
    }
  }
  return out;
}

Predictions load_predictions(const std::filesystem::path& path) {
  return import_predictions(read_text_file(path), path.string());
}

std::string predictions_to_jsonl(const Predictions& predictions) {
  std::string out;
  for (const auto& [key, p] : predictions) {
    ojson j;
    j["template_id"] = key.template_id;
    j["index"] = key.index;
    if (p.skip_reason) {
      j["skip"] = *p.skip_reason;
    } else {
      j["prediction"] = p.text;
    }
    out += dump(j) + "\n";
  }
  return out;
}

}  // namespace vtask
