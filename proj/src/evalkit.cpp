#include "vtask/evalkit.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <json.hpp>

#include "vtask/error.hpp"
#include "vtask/parallel.hpp"
#include "vtask/text_util.hpp"

namespace vtask {

namespace {

struct Block {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint32_t len = 0;
};

// row[j] holds the length of the common prefix of a[i:] and b[j:] for the
// current i; rows are filled from the last i down so ties resolve to the
// smallest i, and within a row to the smallest j.
Block longest_block(std::string_view a, std::string_view b, std::uint32_t* row) {
  const std::size_t m = b.size();
  std::fill(row, row + m + 1, 0u);
  Block best;
  for (std::size_t i = a.size(); i-- > 0;) {
    const char ai = a[i];
    std::uint32_t row_best = 0;
    std::size_t row_j = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint32_t v = ai == b[j] ? row[j + 1] + 1 : 0;
      row[j] = v;
      if (v > row_best) {
        row_best = v;
        row_j = j;
      }
    }
    if (row_best != 0 && row_best >= best.len) best = {i, row_j, row_best};
  }
  return best;
}

std::size_t match(std::string_view a, std::string_view b, std::uint32_t* row) {
  if (a.empty() || b.empty()) return 0;
  const Block blk = longest_block(a, b, row);
  if (blk.len == 0) return 0;
  return blk.len + match(a.substr(0, blk.i), b.substr(0, blk.j), row) +
         match(a.substr(blk.i + blk.len), b.substr(blk.j + blk.len), row);
}

// Short-string path: eq[i] has bit j set when a[i] == b[j] (|b| <= 64). A
// block of length L at (i, j) exists iff bit j survives AND-ing eq[i+k] >> k
// for k < L, so each recursion level costs O(|a| * L) word operations.
struct BitMatcher {
  static constexpr std::size_t kMaxB = 64;
  static constexpr std::size_t kMaxA = 128;

  std::uint64_t eq[kMaxA];
  std::uint64_t cur[kMaxA];

  BitMatcher(std::string_view a, std::string_view b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::uint64_t m = 0;
      for (std::size_t j = 0; j < b.size(); ++j) m |= std::uint64_t{a[i] == b[j]} << j;
      eq[i] = m;
    }
  }

  std::size_t run(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) {
    if (i0 >= i1 || j0 >= j1) return 0;
    const std::uint64_t range = (j1 - j0 == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (j1 - j0)) - 1))
                                << j0;
    bool any = false;
    for (std::size_t i = i0; i < i1; ++i) {
      cur[i] = eq[i] & range;
      any |= cur[i] != 0;
    }
    if (!any) return 0;
    // cur[i] holds the starts j of blocks of length len at i.
    std::size_t len = 1;
    for (;; ++len) {
      bool longer = false;
      for (std::size_t i = i0; i + len < i1; ++i) longer |= (cur[i] & ((eq[i + len] & range) >> len)) != 0;
      if (!longer) break;
      for (std::size_t i = i0; i + len < i1; ++i) cur[i] &= (eq[i + len] & range) >> len;
      for (std::size_t i = i1 - len; i < i1; ++i) cur[i] = 0;
    }
    std::size_t bi = i0;
    while (cur[bi] == 0) ++bi;
    const auto bj = static_cast<std::size_t>(std::countr_zero(cur[bi]));
    return len + run(i0, bi, j0, bj) + run(bi + len, i1, bj + len, j1);
  }
};

bool is_white_space(std::uint32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

// Length of the UTF-8 sequence starting at s[i] and its code point; 0 when
// the bytes there are not a valid sequence.
std::size_t decode(std::string_view s, std::size_t i, std::uint32_t& cp) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned char b0 = byte(i);
  std::size_t len = 0;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  return len;
}

}  // namespace

std::size_t matching_characters(std::string_view a, std::string_view b) {
  if (b.size() <= BitMatcher::kMaxB && a.size() <= BitMatcher::kMaxA) {
    BitMatcher bits(a, b);
    return bits.run(0, a.size(), 0, b.size());
  }
  constexpr std::size_t kStack = 256;
  if (b.size() < kStack) {
    std::uint32_t row[kStack];
    return match(a, b, row);
  }
  std::vector<std::uint32_t> row(b.size() + 1);
  return match(a, b, row.data());
}

double ro_similarity(std::string_view a, std::string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(matching_characters(a, b)) / static_cast<double>(total);
}

std::string strip_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    std::uint32_t cp = 0;
    const std::size_t len = decode(text, i, cp);
    if (len == 0) {
      out += text[i++];
      continue;
    }
    if (!is_white_space(cp)) out.append(text.substr(i, len));
    i += len;
  }
  return out;
}

PairScore score_pair(std::string_view prediction, std::string_view reference) {
  const std::string p = strip_whitespace(prediction);
  const std::string r = strip_whitespace(reference);
  PairScore s;
  s.correct = p == r;
  s.similarity = s.correct ? 1.0 : ro_similarity(p, r);
  s.error_class = s.correct ? ErrorClass::exact : classify_error(prediction, reference);
  return s;
}

std::optional<double> Tally::percent() const {
  if (validated == 0) return std::nullopt;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(validated);
}

int report_rank(TaskClass c) {
  switch (c) {
    case TaskClass::pa: return 0;
    case TaskClass::pr: return 1;
    case TaskClass::pg: return 2;
    case TaskClass::da: return 3;
    case TaskClass::dr: return 4;
    case TaskClass::mt: return 5;
  }
  return 6;
}

EvalResult summarize(std::vector<EvalRecord> records,
                     const std::map<std::string, std::size_t>& n_trained) {
  std::sort(records.begin(), records.end(),
            [](const EvalRecord& a, const EvalRecord& b) { return a.key < b.key; });
  EvalResult result;
  std::map<std::string, ReportRow> rows;
  std::map<std::string, double> miss_sum;
  for (const EvalRecord& r : records) {
    auto [it, fresh] = rows.try_emplace(r.key.template_id);
    ReportRow& row = it->second;
    if (fresh) {
      row.cls = r.cls;
      row.template_name = r.key.template_id;
      row.trained = r.trained;
      if (auto n = n_trained.find(r.key.template_id); n != n_trained.end()) row.n_trained = n->second;
    }
    ++row.n_validated;
    if (r.correct) {
      ++row.n_correct;
    } else {
      miss_sum[r.key.template_id] += r.similarity;
    }
  }
  for (auto& [id, row] : rows) {
    const std::size_t misses = row.n_validated - row.n_correct;
    if (misses > 0) row.avg_error_ro = miss_sum[id] / static_cast<double>(misses);
    result.rows.push_back(row);
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return report_rank(a.cls) < report_rank(b.cls);
                   });
  for (const ReportRow& row : result.rows) {
    if (result.classes.empty() || result.classes.back().cls != row.cls) {
      result.classes.push_back(ClassSummary{row.cls, {}, {}});
    }
    Tally& t = row.trained ? result.classes.back().trained : result.classes.back().non_trained;
    t.correct += row.n_correct;
    t.validated += row.n_validated;
    result.overall.correct += row.n_correct;
    result.overall.validated += row.n_validated;
  }
  result.records = std::move(records);
  return result;
}

EvalResult evaluate_run(const Predictions& predictions, const Corpus& corpus,
                        const EvalFilter& filter, int jobs) {
  std::map<std::string, std::size_t> n_trained;
  std::map<std::string, bool> trained_template;
  for (const TaskResultPair& p : corpus.pairs) {
    if (p.split == Split::train) ++n_trained[p.template_id];
    auto& flag = trained_template.try_emplace(p.template_id, false).first->second;
    flag = flag || p.split != Split::held_out;
  }

  std::vector<const TaskResultPair*> selected;
  for (const TaskResultPair& p : corpus.pairs) {
    if (!filter.splits.contains(p.split)) continue;
    if (!filter.templates.empty() && !filter.templates.contains(p.template_id)) continue;
    selected.push_back(&p);
  }
  std::sort(selected.begin(), selected.end(),
            [](const TaskResultPair* a, const TaskResultPair* b) { return a->key() < b->key(); });

  std::vector<std::string> missing;
  for (const TaskResultPair* p : selected) {
    if (!predictions.contains(p->key())) missing.push_back(to_string(p->key()));
  }
  if (!missing.empty()) {
    std::string message = std::to_string(missing.size()) + " key(s) have no prediction:";
    for (const std::string& k : missing) message += " " + k;
    throw Error(ErrorKind::missing_predictions, message);
  }

  std::vector<EvalRecord> records(selected.size());
  parallel_for(selected.size(), jobs, [&](std::size_t i) {
    const TaskResultPair& p = *selected[i];
    const Prediction& pred = predictions.at(p.key());
    EvalRecord& r = records[i];
    r.key = p.key();
    r.cls = p.cls;
    r.trained = trained_template.at(p.template_id);
    r.skipped = pred.skip_reason.has_value();
    const PairScore s = score_pair(r.skipped ? std::string_view{} : pred.text, p.verilog);
    r.correct = s.correct && !r.skipped;
    r.similarity = r.correct ? 1.0 : (r.skipped ? 0.0 : s.similarity);
    r.error_class = r.correct ? ErrorClass::exact : s.error_class;
  });
  return summarize(std::move(records), n_trained);
}

std::string records_to_jsonl(const EvalResult& result) {
  using ojson = nlohmann::ordered_json;
  std::string out;
  for (const ReportRow& row : result.rows) {
    ojson j;
    j["type"] = "template";
    j["template_id"] = row.template_name;
    j["n_trained"] = row.n_trained;
    out += j.dump() + "\n";
  }
  for (const EvalRecord& r : result.records) {
    ojson j;
    j["type"] = "record";
    j["template_id"] = r.key.template_id;
    j["index"] = r.key.index;
    j["class"] = std::string(to_string(r.cls));
    j["trained"] = r.trained;
    j["skipped"] = r.skipped;
    j["correct"] = r.correct;
    j["similarity"] = r.similarity;
    j["error_class"] = std::string(to_string(r.error_class));
    out += j.dump() + "\n";
  }
  return out;
}

EvalResult parse_records(std::string_view text, std::string_view origin) {
  std::vector<EvalRecord> records;
  std::map<std::string, std::size_t> n_trained;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    try {
      const auto j = nlohmann::json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "template") {
        n_trained[j.at("template_id").get<std::string>()] = j.at("n_trained").get<std::size_t>();
        continue;
      }
      if (type != "record") throw Error(ErrorKind::parse, where + ": unknown line type '" + type + "'");
      EvalRecord r;
      r.key = {j.at("template_id").get<std::string>(), j.at("index").get<std::uint64_t>()};
      const auto cls = parse_task_class(j.at("class").get<std::string>());
      const auto ec = parse_error_class(j.at("error_class").get<std::string>());
      if (!cls || !ec) throw Error(ErrorKind::parse, where + ": unknown class or error class");
      r.cls = *cls;
      r.error_class = *ec;
      r.trained = j.at("trained").get<bool>();
      r.skipped = j.at("skipped").get<bool>();
      r.correct = j.at("correct").get<bool>();
      r.similarity = j.at("similarity").get<double>();
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, where + ": " + e.what());
    }
  }
  return summarize(std::move(records), n_trained);
}

double template_similarity(const Template& a, const Template& b) {
  return ro_similarity(template_text(a), template_text(b));
}

}  // namespace vtask
