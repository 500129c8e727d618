#include "vtask/template_engine.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <regex>
#include <set>

#include "vtask/error.hpp"
#include "vtask/text_util.hpp"

namespace vtask {

namespace {

constexpr std::array<std::pair<SlotKind, std::string_view>, 37> kSlotNames = {{
    {SlotKind::out, "out"},
    {SlotKind::lhs, "lhs"},
    {SlotKind::rhs, "rhs"},
    {SlotKind::op, "op"},
    {SlotKind::inputs, "inputs"},
    {SlotKind::count, "count"},
    {SlotKind::in_level, "in_level"},
    {SlotKind::out_level, "out_level"},
    {SlotKind::quantifier, "quantifier"},
    {SlotKind::place, "place"},
    {SlotKind::sensor, "sensor"},
    {SlotKind::sensor_plural, "sensor_plural"},
    {SlotKind::condition, "condition"},
    {SlotKind::device, "device"},
    {SlotKind::action, "action"},
    {SlotKind::reg, "reg"},
    {SlotKind::width, "width"},
    {SlotKind::input, "input"},
    {SlotKind::enable, "enable"},
    {SlotKind::enable_expr, "enable_expr"},
    {SlotKind::reset, "reset"},
    {SlotKind::reset_expr, "reset_expr"},
    {SlotKind::reset_kind, "reset_kind"},
    {SlotKind::a_reset_kind, "a_reset_kind"},
    {SlotKind::clock, "clock"},
    {SlotKind::sequence, "sequence"},
    {SlotKind::system, "system"},
    {SlotKind::trigger_device, "trigger_device"},
    {SlotKind::trigger, "trigger"},
    {SlotKind::trigger_action, "trigger_action"},
    {SlotKind::trigger_value, "trigger_value"},
    {SlotKind::output_device, "output_device"},
    {SlotKind::on_phrase, "on_phrase"},
    {SlotKind::off_phrase, "off_phrase"},
    {SlotKind::cancel_device, "cancel_device"},
    {SlotKind::cancel_action, "cancel_action"},
    {SlotKind::reset_value, "reset_value"},
}};

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::parse,
                "template body column " + std::to_string(pos + 1) + ": " + message);
  }

  std::vector<Segment> sequence(bool in_clause) {
    std::vector<Segment> out;
    std::string literal;
    auto flush = [&] {
      if (literal.empty()) return;
      Segment s;
      s.kind = Segment::Kind::literal;
      s.text = std::move(literal);
      out.push_back(std::move(s));
      literal.clear();
    };
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '{') {
        flush();
        out.push_back(slot());
      } else if (c == '[') {
        flush();
        out.push_back(clause());
      } else if (c == ']') {
        if (!in_clause) fail("unbalanced ']'");
        flush();
        return out;
      } else if (c == '}') {
        fail("unbalanced '}'");
      } else {
        literal += c;
        ++pos;
      }
    }
    if (in_clause) fail("unterminated clause");
    flush();
    return out;
  }

  Segment slot() {
    const auto close = text.find('}', pos);
    if (close == std::string_view::npos) fail("unterminated slot");
    const std::string_view name = text.substr(pos + 1, close - pos - 1);
    const auto kind = parse_slot_kind(name);
    if (!kind) fail("unknown slot kind '" + std::string(name) + "'");
    pos = close + 1;
    Segment s;
    s.kind = Segment::Kind::slot;
    s.slot = *kind;
    return s;
  }

  Segment clause() {
    ++pos;  // '['
    if (pos >= text.size() || text[pos] != '?') fail("clause must start with '[?'");
    ++pos;
    Segment s;
    s.kind = Segment::Kind::clause;
    if (pos < text.size() && text[pos] == '!') {
      s.negated = true;
      ++pos;
    }
    const auto space = text.find_first_of(" ]", pos);
    if (space == std::string_view::npos || text[space] != ' ') {
      fail("clause guard must be followed by a single space");
    }
    const std::string_view name = text.substr(pos, space - pos);
    const auto feature = parse_feature(name);
    if (!feature) fail("unknown feature '" + std::string(name) + "'");
    s.feature = *feature;
    pos = space + 1;
    s.body = sequence(true);
    ++pos;  // ']'
    return s;
  }
};

struct Usage {
  std::set<SlotKind> all;
  std::set<SlotKind> unguarded;
  std::set<Feature> guarded_pos;
  std::set<Feature> guarded_neg;
  // slot -> positive guards enclosing (some) occurrence; checked per occurrence
  std::vector<std::pair<SlotKind, std::vector<Feature>>> occurrences;
};

void collect(const std::vector<Segment>& body, std::vector<Feature>& guards, bool guarded,
             Usage& u) {
  for (const Segment& s : body) {
    if (s.kind == Segment::Kind::slot) {
      u.all.insert(s.slot);
      if (!guarded) u.unguarded.insert(s.slot);
      u.occurrences.emplace_back(s.slot, guards);
    } else if (s.kind == Segment::Kind::clause) {
      (s.negated ? u.guarded_neg : u.guarded_pos).insert(s.feature);
      if (!s.negated) guards.push_back(s.feature);
      collect(s.body, guards, true, u);
      if (!s.negated) guards.pop_back();
    }
  }
}

Usage usage_of(const Template& t) {
  Usage u;
  std::vector<Feature> guards;
  collect(t.body, guards, false, u);
  return u;
}

std::string render_expr_text(const Expr& e, const Lexicon& lexicon, RngStream& rng);

std::string lexicon_form(const Lexicon& lexicon, const std::string& key, RngStream& rng) {
  const auto forms = lexicon.forms(key);
  if (forms.empty()) throw Error(ErrorKind::unfilled_slot, "lexicon has no entry '" + key + "'");
  return forms[rng.below(forms.size())];
}

std::string render_expr_text(const Expr& e, const Lexicon& lexicon, RngStream& rng) {
  switch (e.kind) {
    case Expr::Kind::var: return quote_signal(e.signal.name);
    case Expr::Kind::constant: return std::to_string(e.value);
    case Expr::Kind::negate:
      return "not " + render_expr_text(e.operands[0], lexicon, rng);
    case Expr::Kind::binop: {
      std::string lhs = render_expr_text(e.operands[0], lexicon, rng);
      std::string op = lexicon_form(lexicon, Lexicon::op_key(e.op), rng);
      std::string rhs = render_expr_text(e.operands[1], lexicon, rng);
      return lhs + " " + op + " " + rhs;
    }
  }
  return {};
}

std::string level_key(std::string_view group, ActiveLevel level) {
  return std::string(group) + (level == ActiveLevel::low ? ".low" : ".high");
}

std::string render_inputs(const std::vector<SignalRef>& inputs) {
  std::string out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i > 0) out += inputs.size() == 2 ? " and " : (i + 1 == inputs.size() ? ", and " : ", ");
    out += quote_signal(inputs[i].name);
  }
  return out;
}

struct SlotFiller {
  const TaskMeta& meta;
  const Lexicon& lexicon;
  RngStream& rng;

  std::optional<std::string> control_name(const std::optional<ControlSignal>& c) {
    if (!c) return std::nullopt;
    return quote_signal(c->signal.name);
  }
  std::optional<std::string> control_expr(const std::optional<ControlSignal>& c) {
    if (!c || !c->definition) return std::nullopt;
    return render_expr_text(*c->definition, lexicon, rng);
  }
  std::optional<std::string> reset_kind(const std::optional<ResetSpec>& r, std::string_view group) {
    if (!r) return std::nullopt;
    return lexicon_form(lexicon, std::string(group) + (r->sync ? ".sync" : ".async"), rng);
  }
  std::optional<ControlSignal> reset_control(const std::optional<ResetSpec>& r) {
    if (!r) return std::nullopt;
    return r->control;
  }

  std::optional<std::string> operator()(SlotKind k) {
    return std::visit([&](const auto& m) { return fill(m, k); }, meta.node);
  }

  std::optional<std::string> fill(const AssignmentMeta& m, SlotKind k) {
    if (k == SlotKind::out) return quote_signal(m.target.name);
    if (const auto* e = std::get_if<Expr>(&m.source)) {
      if (e->kind != Expr::Kind::binop) return std::nullopt;
      switch (k) {
        case SlotKind::lhs: return render_expr_text(e->operands[0], lexicon, rng);
        case SlotKind::rhs: return render_expr_text(e->operands[1], lexicon, rng);
        case SlotKind::op: return lexicon_form(lexicon, Lexicon::op_key(e->op), rng);
        default: return std::nullopt;
      }
    }
    const auto& s = std::get<Scenario>(m.source);
    switch (k) {
      case SlotKind::inputs: return render_inputs(s.inputs);
      case SlotKind::count:
        return lexicon_form(lexicon, "number." + std::to_string(s.inputs.size()), rng);
      case SlotKind::in_level:
        if (s.inputs.empty()) return std::nullopt;
        return lexicon_form(lexicon, level_key("level", s.inputs.front().level), rng);
      case SlotKind::out_level:
        return lexicon_form(lexicon, level_key("level", s.output.level), rng);
      case SlotKind::quantifier:
        return lexicon_form(lexicon, "quantifier." + std::string(to_string(s.quantifier)), rng);
      case SlotKind::place: return s.setting.place;
      case SlotKind::sensor: return s.setting.sensor;
      case SlotKind::sensor_plural: return s.setting.sensor_plural;
      case SlotKind::condition: return s.setting.condition;
      case SlotKind::device: return s.setting.device;
      case SlotKind::action: return s.setting.action;
      default: return std::nullopt;
    }
  }

  std::optional<std::string> fill(const RegisterMeta& m, SlotKind k) {
    switch (k) {
      case SlotKind::reg:
      case SlotKind::out: return quote_signal(m.reg.name);
      case SlotKind::width: return std::to_string(m.reg.width);
      case SlotKind::input: return render_expr_text(m.input, lexicon, rng);
      case SlotKind::enable:
      case SlotKind::trigger: return control_name(m.enable);
      case SlotKind::enable_expr: return control_expr(m.enable);
      case SlotKind::reset: return control_name(reset_control(m.reset));
      case SlotKind::reset_expr: return control_expr(reset_control(m.reset));
      case SlotKind::reset_kind: return reset_kind(m.reset, "reset");
      case SlotKind::a_reset_kind: return reset_kind(m.reset, "reset_a");
      case SlotKind::clock:
        if (!m.clock) return std::nullopt;
        return quote_signal(m.clock->name);
      case SlotKind::trigger_value:
        if (!m.enable) return std::nullopt;
        return lexicon_form(lexicon, level_key("value", m.enable->signal.level), rng);
      case SlotKind::reset_value:
        if (!m.reset) return std::nullopt;
        return lexicon_form(lexicon, level_key("value", m.reset->control.signal.level), rng);
      default: break;
    }
    if (!m.setting) return std::nullopt;
    const RegisterSetting& s = *m.setting;
    switch (k) {
      case SlotKind::system: return s.system;
      case SlotKind::trigger_device: return s.trigger_device;
      case SlotKind::trigger_action: return s.trigger_action;
      case SlotKind::output_device: return s.output_device;
      case SlotKind::on_phrase: return s.on_phrase;
      case SlotKind::off_phrase: return s.off_phrase;
      case SlotKind::cancel_device: return s.cancel_device;
      case SlotKind::cancel_action: return s.cancel_action;
      default: return std::nullopt;
    }
  }

  std::optional<std::string> fill(const SeqGenMeta& m, SlotKind k) {
    switch (k) {
      case SlotKind::out: return quote_signal(m.out.name);
      case SlotKind::width: return std::to_string(m.out.width);
      case SlotKind::sequence: return render_sequence(m.elements, m.out.width);
      case SlotKind::clock: return quote_signal(m.clock.name);
      case SlotKind::enable: return quote_signal(m.enable.signal.name);
      case SlotKind::enable_expr: return control_expr(m.enable);
      case SlotKind::reset: return control_name(reset_control(m.reset));
      case SlotKind::reset_kind: return reset_kind(m.reset, "reset");
      case SlotKind::a_reset_kind: return reset_kind(m.reset, "reset_a");
      default: return std::nullopt;
    }
  }

  std::optional<std::string> fill(const MultiMeta&, SlotKind) { return std::nullopt; }
};

struct Renderer {
  const Template& t;
  const TaskMeta& meta;
  SlotFiller filler;
  std::map<SlotKind, std::string> bound;

  void run(const std::vector<Segment>& body, std::string& out) {
    for (const Segment& s : body) {
      switch (s.kind) {
        case Segment::Kind::literal: out += s.text; break;
        case Segment::Kind::slot: out += value(s.slot); break;
        case Segment::Kind::clause:
          if (has_feature(meta, s.feature) != s.negated) run(s.body, out);
          break;
      }
    }
  }

  const std::string& value(SlotKind k) {
    if (auto it = bound.find(k); it != bound.end()) return it->second;
    auto v = filler(k);
    if (!v) {
      throw Error(ErrorKind::unfilled_slot, "template " + t.id + ": slot {" +
                                                std::string(to_string(k)) +
                                                "} has no value for this task");
    }
    return bound.emplace(k, std::move(*v)).first->second;
  }
};

void text_of(const std::vector<Segment>& body, std::string& out) {
  for (const Segment& s : body) {
    switch (s.kind) {
      case Segment::Kind::literal: out += s.text; break;
      case Segment::Kind::slot: out += "{" + std::string(to_string(s.slot)) + "}"; break;
      case Segment::Kind::clause: text_of(s.body, out); break;
    }
  }
}

struct ClassSlots {
  std::vector<SlotKind> required;
  std::vector<SlotKind> optional;
};

ClassSlots class_slots(TaskClass c) {
  using S = SlotKind;
  switch (c) {
    case TaskClass::pa: return {{S::out, S::lhs, S::op, S::rhs}, {}};
    case TaskClass::da:
      return {{S::out, S::inputs, S::in_level, S::out_level, S::quantifier},
              {S::count, S::place, S::sensor, S::sensor_plural, S::condition, S::device,
               S::action}};
    case TaskClass::pr:
      return {{S::reg, S::width, S::input},
              {S::enable, S::enable_expr, S::reset, S::reset_expr, S::reset_kind,
               S::a_reset_kind, S::clock}};
    case TaskClass::pg:
      return {{S::out, S::sequence, S::clock, S::enable},
              {S::width, S::enable_expr, S::reset, S::reset_kind, S::a_reset_kind}};
    case TaskClass::dr:
      return {{S::out, S::trigger, S::trigger_value, S::reset, S::reset_value},
              {S::reset_kind, S::a_reset_kind, S::system, S::trigger_device,
               S::trigger_action, S::output_device, S::on_phrase, S::off_phrase,
               S::cancel_device, S::cancel_action, S::clock}};
    case TaskClass::mt: return {};
  }
  return {};
}

// A slot that may only be rendered under a positive guard on `feature`.
struct GuardRule {
  SlotKind slot;
  Feature feature;
};

std::vector<GuardRule> guard_rules(TaskClass c) {
  using S = SlotKind;
  using F = Feature;
  std::vector<GuardRule> rules = {{S::enable_expr, F::enable_defined},
                                  {S::reset_expr, F::reset_defined}};
  if (c == TaskClass::pr) {
    rules.insert(rules.end(), {{S::enable, F::enable}, {S::clock, F::clock}});
  }
  if (c == TaskClass::pr || c == TaskClass::pg) {
    rules.insert(rules.end(),
                 {{S::reset, F::reset}, {S::reset_kind, F::reset}, {S::a_reset_kind, F::reset}});
  }
  if (c == TaskClass::dr) rules.push_back({S::clock, F::clock});
  return rules;
}

bool contains(const std::vector<Feature>& v, Feature f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

}  // namespace

std::string_view to_string(SlotKind kind) {
  for (const auto& [k, name] : kSlotNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<SlotKind> parse_slot_kind(std::string_view text) {
  for (const auto& [k, name] : kSlotNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::vector<Segment> parse_template_body(std::string_view text) {
  Parser p{text};
  return p.sequence(false);
}

std::optional<Pool> multi_pool(std::string_view id) {
  if (id == kMultiTrainedId) return Pool::trained;
  if (id == kMultiHeldOutId) return Pool::non_trained;
  return std::nullopt;
}

Registry Registry::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::io, "template directory '" + dir.string() + "' does not exist");
  }
  Registry r;
  for (TaskClass c : kAllClasses) {
    if (c == TaskClass::mt) continue;
    const auto path = dir / (std::string(to_string(c)) + ".tpl");
    if (!std::filesystem::exists(path)) continue;
    r.parse_file(read_text_file(path), c, path.string());
  }
  return r;
}

Registry Registry::load_default() { return load_directory(default_data_dir() / "templates"); }

void Registry::parse_file(std::string_view text, TaskClass cls, std::string_view origin) {
  static const std::regex kHeader(R"(@([a-z]{2}[0-9]{2})\s+(trained|held_out))");
  std::optional<Template> current;
  int header_line = 0;
  std::string body;

  auto finish = [&] {
    if (!current) return;
    try {
      current->body = parse_template_body(body);
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, std::string(origin) + ":" + std::to_string(header_line) +
                                        ": " + current->id + ": " + e.what());
    }
    current->source = body;
    add(std::move(*current));
    current.reset();
    body.clear();
  };

  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    if (line.front() == '@') {
      finish();
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_match(line.begin(), line.end(), m, kHeader)) {
        throw Error(ErrorKind::parse,
                    where + ": expected '@<id> trained|held_out', got '" + std::string(line) + "'");
      }
      const std::string id = m[1].str();
      if (find(id)) throw Error(ErrorKind::parse, where + ": duplicate template id '" + id + "'");
      current = Template{id, cls, m[2].str() == "trained", {}, {}};
      header_line = line_no;
      continue;
    }
    if (!current) throw Error(ErrorKind::parse, where + ": template text before any '@' header");
    if (!body.empty() && line.front() != '[') body += ' ';
    body += line;
  }
  finish();
}

void Registry::add(Template t) {
  if (find(t.id)) throw Error(ErrorKind::parse, "duplicate template id '" + t.id + "'");
  templates_.push_back(std::move(t));
}

const Template* Registry::find(std::string_view id) const {
  for (const Template& t : templates_) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

std::vector<const Template*> Registry::templates(TaskClass cls, Pool pool) const {
  std::vector<const Template*> out;
  for (const Template& t : templates_) {
    if (t.cls != cls) continue;
    if (pool == Pool::trained && !t.trained) continue;
    if (pool == Pool::non_trained && t.trained) continue;
    out.push_back(&t);
  }
  std::sort(out.begin(), out.end(),
            [](const Template* a, const Template* b) { return a->id < b->id; });
  return out;
}

Capabilities capabilities(const Template& t) {
  const Usage u = usage_of(t);
  const auto guarded = [&](Feature f) {
    return u.guarded_pos.contains(f) || u.guarded_neg.contains(f);
  };
  const auto uses = [&](SlotKind k) { return u.all.contains(k); };

  Capabilities caps;
  auto by_marker = [&](Feature f, bool marker) {
    if (guarded(f)) return;
    caps[f].present = marker;
    caps[f].absent = !marker;
  };
  by_marker(Feature::enable, uses(SlotKind::enable) || uses(SlotKind::trigger));
  by_marker(Feature::enable_defined, uses(SlotKind::enable_expr));
  by_marker(Feature::reset, uses(SlotKind::reset));
  by_marker(Feature::reset_defined, uses(SlotKind::reset_expr));
  by_marker(Feature::clock, uses(SlotKind::clock));

  const bool kind_expressible = uses(SlotKind::reset_kind) || uses(SlotKind::a_reset_kind) ||
                                guarded(Feature::reset_sync) || guarded(Feature::reset_async);
  for (Feature f : {Feature::reset_sync, Feature::reset_async}) {
    caps[f].present = caps[Feature::reset].present && kind_expressible;
    caps[f].absent = true;
  }
  return caps;
}

std::optional<Feature> unmet_feature(const Template& t, const TaskMeta& meta) {
  if (std::holds_alternative<MultiMeta>(meta.node)) return std::nullopt;
  const Capabilities caps = capabilities(t);
  for (Feature f : kAllFeatures) {
    const bool on = has_feature(meta, f);
    if (on && !caps[f].present) return f;
    if (!on && !caps[f].absent) return f;
  }
  return std::nullopt;
}

const Template& select_template(TaskClass cls, const TaskMeta& meta, const Registry& registry,
                                RngStream& rng, Pool pool) {
  const auto pool_templates = registry.templates(cls, pool);
  if (pool_templates.empty()) {
    throw Error(ErrorKind::no_suitable_template,
                "no templates of class " + std::string(to_string(cls)) + " in the pool");
  }
  std::vector<const Template*> suitable;
  std::optional<Feature> first_unmet;
  for (const Template* t : pool_templates) {
    const auto unmet = unmet_feature(*t, meta);
    if (!unmet) {
      suitable.push_back(t);
    } else if (!first_unmet) {
      first_unmet = unmet;
    }
  }
  if (suitable.empty()) {
    throw Error(ErrorKind::no_suitable_template,
                "no " + std::string(to_string(cls)) + " template can express feature '" +
                    std::string(to_string(*first_unmet)) + "'");
  }
  return *suitable[rng.below(suitable.size())];
}

std::string render_english(const Template& t, const TaskMeta& meta, const Lexicon& lexicon,
                           RngStream& rng) {
  if (class_of(meta) != t.cls) {
    throw Error(ErrorKind::unfilled_slot, "template " + t.id + " is of class " +
                                              std::string(to_string(t.cls)) +
                                              " but the task is " +
                                              std::string(to_string(class_of(meta))));
  }
  Renderer r{t, meta, SlotFiller{meta, lexicon, rng}, {}};
  std::string out;
  r.run(t.body, out);
  return out;
}

std::string render_multi(const MultiMeta& meta, std::span<const Template* const> templates,
                         const Lexicon& lexicon, RngStream& rng) {
  if (templates.size() != meta.subtasks.size()) {
    throw Error(ErrorKind::internal, "render_multi: one template per subtask required");
  }
  std::string out;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (i > 0) out += ' ';
    out += render_english(*templates[i], meta.subtasks[i], lexicon, rng);
  }
  return out;
}

std::vector<std::string> lexicon_keys_for(SlotKind kind) {
  std::vector<std::string> keys;
  switch (kind) {
    case SlotKind::op:
      for (Op op : kBooleanOps) keys.push_back(Lexicon::op_key(op));
      break;
    case SlotKind::input:
    case SlotKind::enable_expr:
    case SlotKind::reset_expr:
      for (Op op : kAllOps) keys.push_back(Lexicon::op_key(op));
      break;
    case SlotKind::count: keys = {"number.2", "number.3", "number.4"}; break;
    case SlotKind::in_level:
    case SlotKind::out_level: keys = {"level.high", "level.low"}; break;
    case SlotKind::quantifier: keys = {"quantifier.any", "quantifier.all"}; break;
    case SlotKind::reset_kind: keys = {"reset.sync", "reset.async"}; break;
    case SlotKind::a_reset_kind: keys = {"reset_a.sync", "reset_a.async"}; break;
    case SlotKind::trigger_value:
    case SlotKind::reset_value: keys = {"value.high", "value.low"}; break;
    default: break;
  }
  return keys;
}

std::vector<RegistryDiagnostic> validate_registry(const Registry& registry,
                                                  const Lexicon& lexicon) {
  std::vector<RegistryDiagnostic> out;
  for (const std::string& problem : lexicon.validate()) out.push_back({"<lexicon>", problem});

  for (const Template& t : registry.all()) {
    auto report = [&](std::string message) { out.push_back({t.id, std::move(message)}); };
    if (t.id.size() != 4 || t.id.substr(0, 2) != to_string(t.cls)) {
      report("id prefix does not match class " + std::string(to_string(t.cls)));
    }
    const Usage u = usage_of(t);
    const ClassSlots slots = class_slots(t.cls);
    for (SlotKind k : slots.required) {
      if (!u.unguarded.contains(k)) {
        report("required slot {" + std::string(to_string(k)) + "} missing outside clauses");
      }
    }
    for (SlotKind k : u.all) {
      const bool allowed =
          std::find(slots.required.begin(), slots.required.end(), k) != slots.required.end() ||
          std::find(slots.optional.begin(), slots.optional.end(), k) != slots.optional.end();
      if (!allowed) {
        report("slot {" + std::string(to_string(k)) + "} is not valid for class " +
               std::string(to_string(t.cls)));
      }
      for (const std::string& key : lexicon_keys_for(k)) {
        if (lexicon.forms(key).empty()) {
          report("slot {" + std::string(to_string(k)) + "} lacks lexicon entry '" + key + "'");
        }
      }
    }
    if (t.cls == TaskClass::dr && !u.unguarded.contains(SlotKind::reset_kind) &&
        !u.unguarded.contains(SlotKind::a_reset_kind)) {
      report("descriptive register needs {reset_kind} or {a_reset_kind}");
    }
    const auto optional = optional_features(t.cls);
    for (const auto* guards : {&u.guarded_pos, &u.guarded_neg}) {
      for (Feature f : *guards) {
        if (!contains(optional, f)) {
          report("feature '" + std::string(to_string(f)) + "' cannot vary for class " +
                 std::string(to_string(t.cls)));
        }
      }
    }
    for (const GuardRule& rule : guard_rules(t.cls)) {
      for (const auto& [slot, guards] : u.occurrences) {
        if (slot == rule.slot && !contains(guards, rule.feature)) {
          report("slot {" + std::string(to_string(slot)) + "} must sit inside a [?" +
                 std::string(to_string(rule.feature)) + " ...] clause");
        }
      }
    }
    const Capabilities caps = capabilities(t);
    if (caps[Feature::reset].present &&
        (!caps[Feature::reset_sync].present || !caps[Feature::reset_async].present)) {
      report("reset wording cannot tell synchronous from asynchronous");
    }
  }
  return out;
}

std::string template_text(const Template& t) {
  std::string out;
  text_of(t.body, out);
  return out;
}

std::string quote_signal(std::string_view name) { return "`" + std::string(name) + "'"; }

std::string render_sequence(std::span<const unsigned> elements, int width) {
  std::string out = "[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) out += ", ";
    for (int bit = width - 1; bit >= 0; --bit) out += ((elements[i] >> bit) & 1u) ? '1' : '0';
  }
  return out + "]";
}

}  // namespace vtask
