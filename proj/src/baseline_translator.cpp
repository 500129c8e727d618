#include "vtask/baseline_translator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "vtask/error.hpp"
#include "vtask/parallel.hpp"
#include "vtask/text_util.hpp"
#include "vtask/verilog_emit.hpp"

namespace vtask {

namespace {

constexpr std::size_t kMaxMatchesPerTemplate = 64;

bool is_ident_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
}

// Length of a quoted signal `name' at pos, 0 if none.
std::size_t signal_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || text[pos] != '`') return 0;
  std::size_t i = pos + 1;
  if (i >= text.size() || !std::islower(static_cast<unsigned char>(text[i]))) return 0;
  while (i < text.size() && is_ident_char(text[i])) ++i;
  if (i >= text.size() || text[i] != '\'') return 0;
  return i + 1 - pos;
}

std::string unquote(std::string_view quoted) {
  return std::string(quoted.substr(1, quoted.size() - 2));
}

struct Binding {
  std::map<SlotKind, std::string> slots;
  std::vector<std::pair<Feature, bool>> decisions;
};

struct Catalog {
  std::map<SlotKind, std::vector<std::string>> phrases;

  Catalog() {
    auto add = [&](SlotKind k, const std::string& s) {
      auto& v = phrases[k];
      if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
    };
    for (const ScenarioPlace& p : scenario_places()) {
      add(SlotKind::place, p.place);
      for (const auto& s : p.sensors) {
        add(SlotKind::sensor, s.sensor);
        add(SlotKind::sensor_plural, s.plural);
        add(SlotKind::condition, s.condition);
      }
      for (const auto& d : p.devices) {
        add(SlotKind::device, d.device);
        add(SlotKind::action, d.action);
      }
    }
    for (const RegisterSystem& s : register_systems()) {
      add(SlotKind::system, s.system);
      add(SlotKind::trigger_device, s.trigger_device);
      add(SlotKind::trigger_action, s.trigger_action);
      add(SlotKind::output_device, s.output_device);
      add(SlotKind::on_phrase, s.on_phrase);
      add(SlotKind::off_phrase, s.off_phrase);
    }
    for (const CancelDevice& c : cancel_devices()) {
      add(SlotKind::cancel_device, c.device);
      add(SlotKind::cancel_action, c.action);
    }
  }
};

const Catalog& catalog() {
  static const Catalog c;
  return c;
}

// Surface forms of every lexicon key a slot kind draws from.
struct FormTable {
  std::map<SlotKind, std::vector<std::pair<std::string, std::string>>> forms;  // (form, key)
  std::vector<std::pair<std::string, Op>> op_forms;                            // all operators

  explicit FormTable(const Lexicon& lexicon) {
    for (const auto& [name, kind] : all_kinds()) {
      for (const std::string& key : lexicon_keys_for(kind)) {
        for (const std::string& f : lexicon.forms(key)) forms[kind].emplace_back(f, key);
      }
    }
    for (Op op : kAllOps) {
      for (const std::string& f : lexicon.forms(Lexicon::op_key(op))) op_forms.emplace_back(f, op);
    }
  }

  static std::vector<std::pair<std::string_view, SlotKind>> all_kinds() {
    std::vector<std::pair<std::string_view, SlotKind>> out;
    for (int i = 0;; ++i) {
      const auto k = static_cast<SlotKind>(i);
      const std::string_view name = to_string(k);
      if (name == "?") break;
      out.emplace_back(name, k);
    }
    return out;
  }

  std::optional<std::string> key_of(SlotKind kind, std::string_view form) const {
    const auto it = forms.find(kind);
    if (it == forms.end()) return std::nullopt;
    for (const auto& [f, key] : it->second) {
      if (f == form) return key;
    }
    return std::nullopt;
  }
};

bool is_expr_slot(SlotKind k) {
  return k == SlotKind::input || k == SlotKind::enable_expr || k == SlotKind::reset_expr;
}

bool is_signal_slot(SlotKind k) {
  switch (k) {
    case SlotKind::out:
    case SlotKind::lhs:
    case SlotKind::rhs:
    case SlotKind::reg:
    case SlotKind::enable:
    case SlotKind::trigger:
    case SlotKind::reset:
    case SlotKind::clock: return true;
    default: return false;
  }
}

struct Lexers {
  const FormTable& table;

  // Candidate lengths of a `kind` value starting at pos.
  std::vector<std::size_t> candidates(SlotKind kind, std::string_view text, std::size_t pos) const {
    std::vector<std::size_t> out;
    const std::string_view rest = text.substr(pos);
    if (is_signal_slot(kind)) {
      if (const auto n = signal_at(text, pos)) out.push_back(n);
    } else if (is_expr_slot(kind)) {
      expr_candidates(text, pos, out);
    } else if (kind == SlotKind::inputs) {
      input_list_candidates(text, pos, out);
    } else if (kind == SlotKind::width) {
      std::size_t n = 0;
      while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
      if (n > 0) out.push_back(n);
    } else if (kind == SlotKind::sequence) {
      if (!rest.empty() && rest.front() == '[') {
        if (const auto close = rest.find(']'); close != std::string_view::npos) {
          out.push_back(close + 1);
        }
      }
    } else if (const auto it = table.forms.find(kind); it != table.forms.end()) {
      for (const auto& [form, key] : it->second) {
        if (rest.starts_with(form)) out.push_back(form.size());
      }
    } else if (const auto c = catalog().phrases.find(kind); c != catalog().phrases.end()) {
      for (const std::string& phrase : c->second) {
        if (rest.starts_with(phrase)) out.push_back(phrase.size());
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // operand := signal | "not " signal
  std::size_t operand_at(std::string_view text, std::size_t pos) const {
    if (text.substr(pos).starts_with("not ")) {
      const auto n = signal_at(text, pos + 4);
      return n ? n + 4 : 0;
    }
    return signal_at(text, pos);
  }

  void expr_candidates(std::string_view text, std::size_t pos, std::vector<std::size_t>& out) const {
    const std::size_t lhs = operand_at(text, pos);
    if (!lhs) return;
    out.push_back(lhs);
    const std::size_t after = pos + lhs;
    if (after >= text.size() || text[after] != ' ') return;
    for (const auto& [form, op] : table.op_forms) {
      const std::string_view rest = text.substr(after + 1);
      if (!rest.starts_with(form) || rest.size() <= form.size() || rest[form.size()] != ' ') continue;
      const std::size_t rhs_pos = after + 1 + form.size() + 1;
      if (const auto rhs = operand_at(text, rhs_pos)) out.push_back(rhs_pos + rhs - pos);
    }
  }

  void input_list_candidates(std::string_view text, std::size_t pos,
                             std::vector<std::size_t>& out) const {
    const std::size_t first = signal_at(text, pos);
    if (!first) return;
    std::size_t p = pos + first;
    // "`a' and `b'"
    if (text.substr(p).starts_with(" and ")) {
      if (const auto n = signal_at(text, p + 5)) out.push_back(p + 5 + n - pos);
    }
    // "`a', `b', and `c'" with three or more items
    std::size_t items = 1;
    while (true) {
      if (items >= 2 && text.substr(p).starts_with(", and ")) {
        if (const auto n = signal_at(text, p + 6)) out.push_back(p + 6 + n - pos);
      }
      if (!text.substr(p).starts_with(", ")) break;
      const auto n = signal_at(text, p + 2);
      if (!n) break;
      p += 2 + n;
      ++items;
    }
  }
};

struct Matcher {
  std::string_view text;
  const Lexers& lexers;
  Binding current;
  std::vector<Binding> found;
  std::size_t furthest = 0;

  struct Frame {
    const std::vector<Segment>* seq;
    std::size_t idx;
    const Frame* up;
  };

  std::optional<bool> decided(Feature f) const {
    for (const auto& [g, v] : current.decisions) {
      if (g == f) return v;
    }
    return std::nullopt;
  }

  void step(const std::vector<Segment>& seq, std::size_t idx, std::size_t pos, const Frame* up) {
    if (found.size() >= kMaxMatchesPerTemplate) return;
    furthest = std::max(furthest, pos);
    if (idx == seq.size()) {
      if (up) {
        step(*up->seq, up->idx, pos, up->up);
      } else if (pos == text.size()) {
        found.push_back(current);
      }
      return;
    }
    const Segment& s = seq[idx];
    switch (s.kind) {
      case Segment::Kind::literal:
        if (text.substr(pos).starts_with(s.text)) step(seq, idx + 1, pos + s.text.size(), up);
        return;
      case Segment::Kind::slot: {
        if (const auto it = current.slots.find(s.slot); it != current.slots.end()) {
          if (text.substr(pos).starts_with(it->second)) {
            step(seq, idx + 1, pos + it->second.size(), up);
          }
          return;
        }
        for (std::size_t len : lexers.candidates(s.slot, text, pos)) {
          current.slots.emplace(s.slot, std::string(text.substr(pos, len)));
          step(seq, idx + 1, pos + len, up);
          current.slots.erase(s.slot);
        }
        return;
      }
      case Segment::Kind::clause: {
        const auto prior = decided(s.feature);
        for (bool present : {true, false}) {
          if (prior && *prior != present) continue;
          if (!prior) current.decisions.emplace_back(s.feature, present);
          if (present != s.negated) {
            const Frame next{&seq, idx + 1, up};
            step(s.body, 0, pos, &next);
          } else {
            step(seq, idx + 1, pos, up);
          }
          if (!prior) current.decisions.pop_back();
        }
        return;
      }
    }
  }
};

struct Candidate {
  std::vector<std::string> template_ids;
  std::vector<TaskMeta> segments;
  std::string verilog;
};

std::string leading_literal(const Template& t) {
  if (!t.body.empty() && t.body.front().kind == Segment::Kind::literal) return t.body.front().text;
  return {};
}

}  // namespace

struct BaselineTranslator::Impl {
  TranslatorOptions options;
  std::vector<const Template*> templates;
  FormTable table;
  Lexers lexers{table};

  struct Furthest {
    std::size_t pos = 0;
    std::string template_id;
    std::string rejected;  // why the most plausible complete match was discarded
    int rejected_stage = 0;
  };

  Impl(const Registry& registry, const Lexicon& lexicon, TranslatorOptions opts)
      : options(std::move(opts)), table(lexicon) {
    for (const Template& t : registry.all()) {
      if (t.trained || options.include_held_out) templates.push_back(&t);
    }
    std::sort(templates.begin(), templates.end(),
              [](const Template* a, const Template* b) { return a->id < b->id; });
  }
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;

  Expr parse_operand(std::string_view text) const {
    if (text.starts_with("not ")) return Expr::negate(parse_operand(text.substr(4)));
    return Expr::var(SignalRef{unquote(text), 1, ActiveLevel::unspecified});
  }

  std::optional<Expr> parse_expr(std::string_view text) const {
    const std::size_t lhs = lexers.operand_at(text, 0);
    if (!lhs) return std::nullopt;
    if (lhs == text.size()) return parse_operand(text);
    std::optional<Expr> result;
    for (const auto& [form, op] : table.op_forms) {
      const std::string mid = " " + form + " ";
      if (text.substr(lhs).starts_with(mid)) {
        const std::string_view rhs = text.substr(lhs + mid.size());
        if (lexers.operand_at(rhs, 0) != rhs.size()) continue;
        if (result) return std::nullopt;  // two readings
        result = Expr::binop(op, parse_operand(text.substr(0, lhs)), parse_operand(rhs));
      }
    }
    return result;
  }

  std::optional<std::vector<std::string>> parse_inputs(std::string_view text) const {
    std::vector<std::string> names;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t n = signal_at(text, pos);
      if (!n) return std::nullopt;
      names.push_back(unquote(text.substr(pos, n)));
      pos += n;
      for (std::string_view sep : {", and ", " and ", ", "}) {
        if (text.substr(pos).starts_with(sep)) {
          pos += sep.size();
          break;
        }
      }
    }
    return names;
  }

  std::optional<bool> reset_sync(const Binding& b) const {
    for (auto [kind, group] : {std::pair{SlotKind::reset_kind, "reset."},
                               std::pair{SlotKind::a_reset_kind, "reset_a."}}) {
      if (const auto it = b.slots.find(kind); it != b.slots.end()) {
        const auto key = table.key_of(kind, it->second);
        if (!key) return std::nullopt;
        return *key == std::string(group) + "sync";
      }
    }
    for (const auto& [f, v] : b.decisions) {
      if (f == Feature::reset_sync) return v;
      if (f == Feature::reset_async) return !v;
    }
    return true;
  }

  std::optional<ActiveLevel> level_of(SlotKind kind, const Binding& b) const {
    const auto it = b.slots.find(kind);
    if (it == b.slots.end()) return std::nullopt;
    const auto key = table.key_of(kind, it->second);
    if (!key) return std::nullopt;
    return key->ends_with(".low") ? ActiveLevel::low : ActiveLevel::high;
  }

  std::optional<ControlSignal> control(const Binding& b, SlotKind name, SlotKind def) const {
    const auto it = b.slots.find(name);
    if (it == b.slots.end()) return std::nullopt;
    ControlSignal c{SignalRef{unquote(it->second), 1, ActiveLevel::unspecified}, std::nullopt};
    if (const auto d = b.slots.find(def); d != b.slots.end()) {
      auto e = parse_expr(d->second);
      if (!e) return std::nullopt;
      c.definition = std::move(*e);
    }
    return c;
  }

  std::string slot(const Binding& b, SlotKind k) const {
    const auto it = b.slots.find(k);
    return it == b.slots.end() ? std::string{} : it->second;
  }

  std::optional<TaskMeta> build(const Template& t, const Binding& b) const {
    const auto has = [&](SlotKind k) { return b.slots.contains(k); };
    const auto name = [&](SlotKind k) { return unquote(slot(b, k)); };
    switch (t.cls) {
      case TaskClass::pa: {
        const auto op_key = table.key_of(SlotKind::op, slot(b, SlotKind::op));
        if (!op_key) return std::nullopt;
        const auto op = parse_op(std::string_view(*op_key).substr(3));
        const auto lhs = parse_expr(slot(b, SlotKind::lhs));
        const auto rhs = parse_expr(slot(b, SlotKind::rhs));
        if (!op || !lhs || !rhs) return std::nullopt;
        return TaskMeta{AssignmentMeta{SignalRef{name(SlotKind::out)}, Expr::binop(*op, *lhs, *rhs)}};
      }
      case TaskClass::da: {
        const auto names = parse_inputs(slot(b, SlotKind::inputs));
        const auto in_level = level_of(SlotKind::in_level, b);
        const auto out_level = level_of(SlotKind::out_level, b);
        const auto quant = table.key_of(SlotKind::quantifier, slot(b, SlotKind::quantifier));
        if (!names || !in_level || !out_level || !quant) return std::nullopt;
        if (has(SlotKind::count)) {
          const auto key = table.key_of(SlotKind::count, slot(b, SlotKind::count));
          if (!key || *key != "number." + std::to_string(names->size())) return std::nullopt;
        }
        Scenario s;
        s.setting = ScenarioSetting{slot(b, SlotKind::place),     slot(b, SlotKind::sensor),
                                    slot(b, SlotKind::sensor_plural), slot(b, SlotKind::condition),
                                    slot(b, SlotKind::device),    slot(b, SlotKind::action)};
        for (const std::string& n : *names) s.inputs.push_back(SignalRef{n, 1, *in_level});
        s.output = SignalRef{name(SlotKind::out), 1, *out_level};
        s.quantifier = *quant == "quantifier.all" ? Quantifier::all : Quantifier::any;
        SignalRef target = s.output;
        return TaskMeta{AssignmentMeta{std::move(target), std::move(s)}};
      }
      case TaskClass::pr: {
        RegisterMeta r;
        const std::string width_text = slot(b, SlotKind::width);
        if (width_text.size() > 3) return std::nullopt;
        r.reg = SignalRef{name(SlotKind::reg), std::stoi(width_text)};
        const auto input = parse_expr(slot(b, SlotKind::input));
        if (!input) return std::nullopt;
        r.input = *input;
        if (has(SlotKind::enable)) {
          r.enable = control(b, SlotKind::enable, SlotKind::enable_expr);
          if (!r.enable) return std::nullopt;
        }
        if (has(SlotKind::reset)) {
          auto c = control(b, SlotKind::reset, SlotKind::reset_expr);
          const auto sync = reset_sync(b);
          if (!c || !sync) return std::nullopt;
          r.reset = ResetSpec{std::move(*c), *sync};
        }
        if (has(SlotKind::clock)) r.clock = SignalRef{name(SlotKind::clock)};
        return TaskMeta{std::move(r)};
      }
      case TaskClass::pg: {
        SeqGenMeta g;
        const std::string seq = slot(b, SlotKind::sequence);
        const auto items = split(std::string_view(seq).substr(1, seq.size() - 2), ',');
        int width = -1;
        for (std::string_view raw : items) {
          const std::string_view bits = trim(raw);
          if (bits.empty() || bits.size() > 16 ||
              bits.find_first_not_of("01") != std::string_view::npos) {
            return std::nullopt;
          }
          if (width >= 0 && static_cast<int>(bits.size()) != width) return std::nullopt;
          width = static_cast<int>(bits.size());
          g.elements.push_back(static_cast<unsigned>(std::stoul(std::string(bits), nullptr, 2)));
        }
        if (has(SlotKind::width) && slot(b, SlotKind::width) != std::to_string(width)) {
          return std::nullopt;
        }
        g.out = SignalRef{name(SlotKind::out), width};
        auto enable = control(b, SlotKind::enable, SlotKind::enable_expr);
        if (!enable) return std::nullopt;
        g.enable = std::move(*enable);
        if (has(SlotKind::reset)) {
          const auto sync = reset_sync(b);
          if (!sync) return std::nullopt;
          g.reset = ResetSpec{ControlSignal{SignalRef{name(SlotKind::reset)}, std::nullopt}, *sync};
        }
        g.clock = SignalRef{name(SlotKind::clock)};
        return TaskMeta{std::move(g)};
      }
      case TaskClass::dr: {
        RegisterMeta r;
        const auto trigger_level = level_of(SlotKind::trigger_value, b);
        const auto reset_level = level_of(SlotKind::reset_value, b);
        const auto sync = reset_sync(b);
        if (!trigger_level || !reset_level || !sync) return std::nullopt;
        r.setting = RegisterSetting{slot(b, SlotKind::system),        slot(b, SlotKind::trigger_device),
                                    slot(b, SlotKind::trigger_action), slot(b, SlotKind::output_device),
                                    slot(b, SlotKind::on_phrase),      slot(b, SlotKind::off_phrase),
                                    slot(b, SlotKind::cancel_device),  slot(b, SlotKind::cancel_action)};
        r.reg = SignalRef{name(SlotKind::out), 1};
        r.input = Expr::constant(1);
        r.enable = ControlSignal{SignalRef{name(SlotKind::trigger), 1, *trigger_level}, std::nullopt};
        r.reset = ResetSpec{
            ControlSignal{SignalRef{name(SlotKind::reset), 1, *reset_level}, std::nullopt}, *sync};
        if (has(SlotKind::clock)) r.clock = SignalRef{name(SlotKind::clock)};
        return TaskMeta{std::move(r)};
      }
      case TaskClass::mt: break;
    }
    return std::nullopt;
  }

  struct Rejection {
    int stage = 0;  // later stages are closer to acceptance
    std::string reason;
  };

  // Empty reason when the reading is coherent.
  Rejection inconsistency(const Template& t, const Binding& b, const TaskMeta& meta) const {
    for (const auto& [f, v] : b.decisions) {
      if (has_feature(meta, f) != v) {
        return {2, "clause on '" + std::string(to_string(f)) + "' disagrees with the task"};
      }
    }
    if (const auto f = unmet_feature(t, meta)) {
      return {3, "template cannot express feature '" + std::string(to_string(*f)) + "'"};
    }
    const auto problems = check_invariants(meta, options.gen);
    if (problems.empty()) return {};
    return {4, problems.front()};
  }

  static void note(Furthest& furthest, const Template& t, Rejection r) {
    if (r.stage <= furthest.rejected_stage) return;
    furthest.rejected_stage = r.stage;
    furthest.rejected = t.id + ": " + r.reason;
  }

  // All readings of one segment, deduplicated by emitted Verilog.
  std::vector<Candidate> segment(std::string_view text, std::size_t offset, Furthest& furthest) const {
    std::vector<Candidate> out;
    for (const Template* t : templates) {
      const std::string opener = leading_literal(*t);
      if (!text.starts_with(opener)) continue;
      Matcher m{text, lexers, {}, {}, 0};
      m.step(t->body, 0, 0, nullptr);
      if (offset + m.furthest > furthest.pos || furthest.template_id.empty()) {
        furthest.pos = offset + m.furthest;
        furthest.template_id = t->id;
      }
      for (const Binding& b : m.found) {
        auto meta = build(*t, b);
        if (!meta) {
          note(furthest, *t, {1, "slot values do not form a task"});
          continue;
        }
        if (auto why = inconsistency(*t, b, *meta); why.stage != 0) {
          note(furthest, *t, std::move(why));
          continue;
        }
        std::string verilog = emit(*meta);
        auto same = std::find_if(out.begin(), out.end(),
                                 [&](const Candidate& c) { return c.verilog == verilog; });
        if (same == out.end()) {
          out.push_back(Candidate{{t->id}, {std::move(*meta)}, std::move(verilog)});
        } else if (std::find(same->template_ids.begin(), same->template_ids.end(), t->id) ==
                   same->template_ids.end()) {
          same->template_ids.push_back(t->id);
        }
      }
    }
    return out;
  }

  bool opens_template(std::string_view rest) const {
    for (const Template* t : templates) {
      const std::string opener = leading_literal(*t);
      if (opener.empty() || rest.starts_with(opener)) return true;
    }
    return false;
  }

  ParseOutcome parse(std::string_view english) const {
    const std::string text = normalize_english(english);
    const std::string_view view = text;

    // Segment starts: the beginning plus every sentence start that opens a template.
    std::vector<std::size_t> starts{0};
    for (std::size_t p = 2; p < view.size(); ++p) {
      if (view[p - 2] == '.' && view[p - 1] == ' ' &&
          std::isupper(static_cast<unsigned char>(view[p])) && opens_template(view.substr(p))) {
        starts.push_back(p);
      }
    }
    const std::size_t n = starts.size();
    auto boundary_end = [&](std::size_t k) { return k == n ? view.size() : starts[k] - 1; };

    Furthest furthest;
    // reach[k]: distinct readings of the prefix ending before starts[k] (at most two kept)
    std::vector<std::vector<Candidate>> reach(n + 1);
    reach[0].push_back(Candidate{});
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        if (reach[j].empty()) continue;
        const std::size_t begin = starts[j];
        const std::size_t end = boundary_end(k);
        const auto parts = segment(view.substr(begin, end - begin), begin, furthest);
        for (const Candidate& prefix : reach[j]) {
          for (const Candidate& part : parts) {
            Candidate joined = prefix;
            joined.template_ids.insert(joined.template_ids.end(), part.template_ids.begin(),
                                       part.template_ids.end());
            joined.segments.insert(joined.segments.end(), part.segments.begin(),
                                   part.segments.end());
            joined.verilog += (joined.verilog.empty() ? "" : "\n") + part.verilog;
            auto& slot = reach[k];
            auto same = std::find_if(slot.begin(), slot.end(), [&](const Candidate& c) {
              return c.verilog == joined.verilog;
            });
            if (same == slot.end() && slot.size() < 2) slot.push_back(std::move(joined));
          }
        }
      }
    }

    std::vector<Candidate> results;
    for (Candidate& c : reach[n]) {
      if (c.segments.size() > 1) {
        TaskMeta multi{MultiMeta{std::move(c.segments)}};
        if (!check_invariants(multi, options.gen).empty()) continue;
        c.segments = {std::move(multi)};
      }
      results.push_back(std::move(c));
    }
    if (results.empty()) {
      std::string message = "no template matches";
      if (!furthest.rejected.empty()) {
        message += "; complete match rejected (" + furthest.rejected + ")";
      } else if (!furthest.template_id.empty()) {
        message += "; longest partial match " + furthest.template_id + " up to column " +
                   std::to_string(furthest.pos + 1) + ": '" +
                   std::string(view.substr(0, furthest.pos)) + "'";
      }
      throw Error(ErrorKind::no_match, message);
    }
    if (results.size() > 1) {
      std::string ids;
      for (const Candidate& c : results) {
        for (const std::string& id : c.template_ids) ids += (ids.empty() ? "" : ", ") + id;
      }
      throw Error(ErrorKind::ambiguous_match, "readings with different code from templates " + ids);
    }
    return ParseOutcome{std::move(results.front().segments.front()),
                        std::move(results.front().template_ids)};
  }
};

BaselineTranslator::BaselineTranslator(const Registry& registry, const Lexicon& lexicon,
                                       TranslatorOptions options)
    : impl_(std::make_shared<const Impl>(registry, lexicon, std::move(options))) {}

ParseOutcome BaselineTranslator::parse(std::string_view english) const {
  return impl_->parse(english);
}

std::string BaselineTranslator::translate(std::string_view english) const {
  return emit(parse(english).meta);
}

std::string normalize_english(std::string_view english) {
  std::string collapsed;
  collapsed.reserve(english.size());
  bool pending_space = false;
  for (char c : english) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed += ' ';
    pending_space = false;
    collapsed += c;
  }
  static const std::regex kSingleQuoted(R"((^|[^`a-z0-9])'([a-z][a-z0-9]*)')");
  return std::regex_replace(collapsed, kSingleQuoted, "$1`$2'");
}

Predictions translate_corpus(const BaselineTranslator& translator, const Corpus& corpus,
                             const std::set<Split>& splits, int jobs) {
  std::vector<const TaskResultPair*> selected;
  for (const TaskResultPair& p : corpus.pairs) {
    if (splits.contains(p.split)) selected.push_back(&p);
  }
  std::vector<std::string> outputs(selected.size());
  parallel_for(selected.size(), jobs, [&](std::size_t i) {
    try {
      outputs[i] = translator.translate(selected[i]->english);
    } catch (const Error&) {
      outputs[i].clear();
    }
  });
  Predictions out;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    out.emplace(selected[i]->key(), Prediction{std::move(outputs[i]), std::nullopt});
  }
  return out;
}

}  // namespace vtask
