#include "vtask/meta_gen.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_set>

#include "vtask/error.hpp"

namespace vtask {

namespace {

const std::unordered_set<std::string_view>& reserved_words() {
  static const std::unordered_set<std::string_view> words = {
      // Verilog-2005 (IEEE 1364-2005) keywords.
      "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1",
      "case", "casex", "casez", "cell", "cmos", "config", "deassign", "default",
      "defparam", "design", "disable", "edge", "else", "end", "endcase",
      "endconfig", "endfunction", "endgenerate", "endmodule", "endprimitive",
      "endspecify", "endtable", "endtask", "event", "for", "force", "forever",
      "fork", "function", "generate", "genvar", "highz0", "highz1", "if",
      "ifnone", "incdir", "include", "initial", "inout", "input", "instance",
      "integer", "join", "large", "liblist", "library", "localparam",
      "macromodule", "medium", "module", "nand", "negedge", "nmos", "nor",
      "noshowcancelled", "not", "notif0", "notif1", "or", "output", "parameter",
      "pmos", "posedge", "primitive", "pull0", "pull1", "pulldown", "pullup",
      "pulsestyle_onevent", "pulsestyle_ondetect", "rcmos", "real", "realtime",
      "reg", "release", "repeat", "rnmos", "rpmos", "rtran", "rtranif0",
      "rtranif1", "scalared", "showcancelled", "signed", "small", "specify",
      "specparam", "strong0", "strong1", "supply0", "supply1", "table", "task",
      "time", "tran", "tranif0", "tranif1", "tri", "tri0", "tri1", "triand",
      "trior", "trireg", "unsigned", "use", "uwire", "vectored", "wait", "wand",
      "weak0", "weak1", "while", "wire", "wor", "xnor", "xor",
      // SystemVerilog words the emitted snippets use or could collide with.
      "bit", "byte", "enum", "int", "logic", "new", "ref", "unique", "var",
      "do", "let", "null",
      // Names the emitter introduces itself.
      "clk", "state", "s0", "s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "s9",
  };
  return words;
}

constexpr int kMaxNameAttempts = 1000;

bool decide(RngStream& rng, double p, const Capabilities& caps, Feature f) {
  const bool draw = rng.bernoulli(p);
  if (!caps[f].present) return false;
  if (!caps[f].absent) return true;
  return draw;
}

struct Sampler {
  RngStream& rng;
  const GenConfig& cfg;
  const Capabilities& caps;
  std::set<std::string>& taken;

  SignalRef fresh(int width = 1, ActiveLevel level = ActiveLevel::unspecified) {
    return SignalRef{sample_identifier(rng, taken), width, level};
  }

  Expr binop_over_fresh(std::span<const Op> ops) {
    const Op op = rng.pick(ops);
    Expr lhs = Expr::var(fresh());
    Expr rhs = Expr::var(fresh());
    return Expr::binop(op, std::move(lhs), std::move(rhs));
  }

  bool compound_allowed() const { return cfg.expr_depth_max >= 2; }

  ActiveLevel polarity() {
    return rng.bernoulli(cfg.p_active_low) ? ActiveLevel::low : ActiveLevel::high;
  }

  bool reset_sync() {
    bool sync = rng.bernoulli(cfg.p_reset_sync);
    if (sync && !caps[Feature::reset_sync].present) sync = false;
    if (!sync && !caps[Feature::reset_async].present) sync = true;
    return sync;
  }

  TaskMeta assignment() {
    if (!compound_allowed()) {
      throw Error(ErrorKind::config,
                  "expr_depth_max = 1 cannot express prescriptive assignments "
                  "(they always apply an operator)");
    }
    SignalRef target = fresh();
    Expr expr = binop_over_fresh(kBooleanOps);
    return TaskMeta{AssignmentMeta{std::move(target), std::move(expr)}};
  }

  TaskMeta scenario_assignment() {
    const ScenarioPlace& place = rng.pick(scenario_places());
    const auto& sensor = rng.pick(place.sensors);
    const auto& device = rng.pick(place.devices);
    Scenario s;
    s.setting = ScenarioSetting{place.place,     sensor.sensor, sensor.plural,
                                sensor.condition, device.device, device.action};
    const int n = rng.between(cfg.scenario_inputs_min, cfg.scenario_inputs_max);
    const ActiveLevel in_level = polarity();
    const ActiveLevel out_level = polarity();
    s.quantifier = rng.bernoulli(cfg.p_quantifier_all) ? Quantifier::all : Quantifier::any;
    s.output = fresh(1, out_level);
    for (int i = 0; i < n; ++i) s.inputs.push_back(fresh(1, in_level));
    SignalRef target = s.output;
    return TaskMeta{AssignmentMeta{std::move(target), std::move(s)}};
  }

  ControlSignal control(Feature defined_feature) {
    ControlSignal c{fresh(), std::nullopt};
    const bool defined = decide(rng, cfg.p_defined, caps, defined_feature);
    if (defined && compound_allowed()) c.definition = binop_over_fresh(kAllOps);
    return c;
  }

  TaskMeta prescriptive_register() {
    RegisterMeta r;
    r.reg = fresh(rng.between(cfg.width_min, cfg.width_max));
    const bool compound = decide(rng, cfg.p_input_compound, caps, Feature::input_defined);
    r.input = (compound && compound_allowed()) ? binop_over_fresh(kAllOps)
                                               : Expr::var(fresh());
    if (decide(rng, cfg.p_enable, caps, Feature::enable)) {
      r.enable = control(Feature::enable_defined);
    }
    if (decide(rng, cfg.p_reset, caps, Feature::reset)) {
      const bool sync = reset_sync();
      r.reset = ResetSpec{control(Feature::reset_defined), sync};
    }
    if (decide(rng, cfg.p_clock_explicit, caps, Feature::clock)) r.clock = fresh();
    return TaskMeta{std::move(r)};
  }

  TaskMeta descriptive_register() {
    const RegisterSystem& sys = rng.pick(register_systems());
    const CancelDevice& cancel = rng.pick(cancel_devices());
    RegisterMeta r;
    r.setting = RegisterSetting{sys.system,        sys.trigger_device, sys.trigger_action,
                                sys.output_device, sys.on_phrase,      sys.off_phrase,
                                cancel.device,     cancel.action};
    r.reg = fresh(1);
    r.input = Expr::constant(1);
    r.enable = ControlSignal{fresh(1, polarity()), std::nullopt};
    SignalRef cancel_signal = fresh(1, polarity());
    const bool sync = reset_sync();
    r.reset = ResetSpec{ControlSignal{std::move(cancel_signal), std::nullopt}, sync};
    if (decide(rng, cfg.p_clock_explicit, caps, Feature::clock)) r.clock = fresh();
    return TaskMeta{std::move(r)};
  }

  TaskMeta sequence_generator() {
    SeqGenMeta g;
    const int width = rng.between(cfg.seq_width_min, cfg.seq_width_max);
    g.out = fresh(width);
    const int length = rng.between(cfg.seq_len_min, cfg.seq_len_max);
    for (int i = 0; i < length; ++i) {
      g.elements.push_back(static_cast<unsigned>(rng.below(1ULL << width)));
    }
    g.enable = control(Feature::enable_defined);
    if (decide(rng, cfg.p_reset, caps, Feature::reset)) {
      const bool sync = reset_sync();
      g.reset = ResetSpec{ControlSignal{fresh(), std::nullopt}, sync};
    }
    g.clock = fresh();
    return TaskMeta{std::move(g)};
  }

  TaskMeta multi() {
    static constexpr std::array<TaskClass, 3> kSubclasses = {
        TaskClass::pa, TaskClass::da, TaskClass::pr};
    MultiMeta m;
    const int n = rng.between(cfg.multi_min, cfg.multi_max);
    const Capabilities unconstrained{};
    for (int i = 0; i < n; ++i) {
      const TaskClass sub = rng.pick(kSubclasses);
      Sampler inner{rng, cfg, unconstrained, taken};
      m.subtasks.push_back(inner.sample(sub));
    }
    return TaskMeta{std::move(m)};
  }

  TaskMeta sample(TaskClass cls) {
    switch (cls) {
      case TaskClass::pa: return assignment();
      case TaskClass::da: return scenario_assignment();
      case TaskClass::pr: return prescriptive_register();
      case TaskClass::dr: return descriptive_register();
      case TaskClass::pg: return sequence_generator();
      case TaskClass::mt: return multi();
    }
    throw Error(ErrorKind::internal, "unknown task class");
  }
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::config, message);
}

void check_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0, std::string(name) + " must lie in [0, 1]");
}

}  // namespace

void GenConfig::validate() const {
  require(expr_depth_max >= 1 && expr_depth_max <= 2,
          "expr_depth_max must be 1 or 2 (templates render at most one operator)");
  require(seq_len_min >= 2 && seq_len_max <= 4 && seq_len_min <= seq_len_max,
          "sequence length range must satisfy 2 <= seq_len_min <= seq_len_max <= 4");
  require(width_min >= 1 && width_max <= 8 && width_min <= width_max,
          "register width range must satisfy 1 <= width_min <= width_max <= 8");
  require(seq_width_min >= 1 && seq_width_max <= 3 && seq_width_min <= seq_width_max,
          "sequence width range must satisfy 1 <= seq_width_min <= seq_width_max <= 3");
  require(scenario_inputs_min >= 2 && scenario_inputs_max <= 4 &&
              scenario_inputs_min <= scenario_inputs_max,
          "scenario input range must satisfy 2 <= min <= max <= 4");
  require(multi_min >= 2 && multi_max <= 4 && multi_min <= multi_max,
          "multi-task subtask range must satisfy 2 <= multi_min <= multi_max <= 4");
  check_probability(p_enable, "p_enable");
  check_probability(p_reset, "p_reset");
  check_probability(p_reset_sync, "p_reset_sync");
  check_probability(p_clock_explicit, "p_clock_explicit");
  check_probability(p_defined, "p_defined");
  check_probability(p_input_compound, "p_input_compound");
  check_probability(p_active_low, "p_active_low");
  check_probability(p_quantifier_all, "p_quantifier_all");
}

std::span<const GenConfigField> gen_config_fields() {
  static const std::array<GenConfigField, 19> fields = {{
      {"expr_depth_max", &GenConfig::expr_depth_max, nullptr},
      {"seq_len_min", &GenConfig::seq_len_min, nullptr},
      {"seq_len_max", &GenConfig::seq_len_max, nullptr},
      {"width_min", &GenConfig::width_min, nullptr},
      {"width_max", &GenConfig::width_max, nullptr},
      {"seq_width_min", &GenConfig::seq_width_min, nullptr},
      {"seq_width_max", &GenConfig::seq_width_max, nullptr},
      {"scenario_inputs_min", &GenConfig::scenario_inputs_min, nullptr},
      {"scenario_inputs_max", &GenConfig::scenario_inputs_max, nullptr},
      {"multi_min", &GenConfig::multi_min, nullptr},
      {"multi_max", &GenConfig::multi_max, nullptr},
      {"p_enable", nullptr, &GenConfig::p_enable},
      {"p_reset", nullptr, &GenConfig::p_reset},
      {"p_reset_sync", nullptr, &GenConfig::p_reset_sync},
      {"p_clock_explicit", nullptr, &GenConfig::p_clock_explicit},
      {"p_defined", nullptr, &GenConfig::p_defined},
      {"p_input_compound", nullptr, &GenConfig::p_input_compound},
      {"p_active_low", nullptr, &GenConfig::p_active_low},
      {"p_quantifier_all", nullptr, &GenConfig::p_quantifier_all},
  }};
  return fields;
}

bool is_reserved_word(std::string_view word) { return reserved_words().contains(word); }

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || name.size() > 3) return false;
  if (name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name.substr(1)) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (!alnum) return false;
  }
  return !is_reserved_word(name);
}

std::string sample_identifier(RngStream& rng, std::set<std::string>& taken) {
  static constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyz";
  static constexpr std::string_view kAlnum = "abcdefghijklmnopqrstuvwxyz0123456789";
  for (int attempt = 0; attempt < kMaxNameAttempts; ++attempt) {
    const int length = rng.between(1, 3);
    std::string name(1, kLetters[rng.below(kLetters.size())]);
    for (int i = 1; i < length; ++i) name += kAlnum[rng.below(kAlnum.size())];
    if (is_reserved_word(name) || taken.contains(name)) continue;
    taken.insert(name);
    return name;
  }
  throw Error(ErrorKind::exhaustion,
              "could not draw a fresh signal name after " +
                  std::to_string(kMaxNameAttempts) + " attempts (" +
                  std::to_string(taken.size()) + " names already allocated)");
}

TaskMeta sample_meta(TaskClass cls, RngStream& rng, const GenConfig& cfg,
                     const Capabilities& caps) {
  std::set<std::string> taken;
  return sample_meta(cls, rng, cfg, caps, taken);
}

TaskMeta sample_meta(TaskClass cls, RngStream& rng, const GenConfig& cfg,
                     const Capabilities& caps, std::set<std::string>& taken) {
  cfg.validate();
  Sampler sampler{rng, cfg, caps, taken};
  return sampler.sample(cls);
}

namespace {

struct InvariantChecker {
  const GenConfig& cfg;
  std::vector<std::string>& problems;
  std::map<std::string, int> uses;

  void fail(std::string message) { problems.push_back(std::move(message)); }

  void name(const SignalRef& s, int max_width = 1) {
    if (!is_valid_identifier(s.name)) fail("invalid identifier '" + s.name + "'");
    if (s.width < 1 || s.width > max_width) {
      fail("signal '" + s.name + "' has width " + std::to_string(s.width));
    }
    ++uses[s.name];
  }

  void expr(const Expr& e, const std::string& output, bool allow_compound) {
    if (e.kind == Expr::Kind::binop) {
      if (!allow_compound) fail("compound expression not allowed here");
      if (e.depth() > cfg.expr_depth_max) fail("expression deeper than expr_depth_max");
    }
    if (e.kind == Expr::Kind::negate) fail("negation outside a scenario");
    for (const Expr& sub : e.operands) {
      if (sub.kind == Expr::Kind::binop && !is_boolean(sub.op)) {
        fail("arithmetic/relational operator nested inside another operator");
      }
    }
    std::vector<std::string> leaves;
    e.collect_signals(leaves);
    for (const std::string& leaf : leaves) {
      if (leaf == output) fail("expression reads its own output '" + output + "'");
    }
    walk_leaves(e);
  }

  void walk_leaves(const Expr& e) {
    if (e.kind == Expr::Kind::var) name(e.signal);
    for (const Expr& sub : e.operands) walk_leaves(sub);
  }

  void control(const ControlSignal& c) {
    name(c.signal);
    if (c.definition) expr(*c.definition, c.signal.name, true);
  }

  void task(const TaskMeta& meta, bool top_level) {
    std::visit([&](const auto& m) { visit(m, top_level); }, meta.node);
  }

  void visit(const AssignmentMeta& m, bool) {
    name(m.target);
    if (const auto* e = std::get_if<Expr>(&m.source)) {
      if (e->kind != Expr::Kind::binop || !is_boolean(e->op)) {
        fail("prescriptive assignment must apply a Boolean operator");
      }
      expr(*e, m.target.name, true);
      return;
    }
    const auto& s = std::get<Scenario>(m.source);
    if (s.inputs.size() < 2 || s.inputs.size() > 4) fail("scenario needs 2..4 inputs");
    if (s.output.level == ActiveLevel::unspecified) fail("scenario output polarity unspecified");
    if (s.output.name != m.target.name) fail("scenario output differs from target");
    for (const SignalRef& in : s.inputs) {
      if (in.level == ActiveLevel::unspecified) fail("scenario input polarity unspecified");
      if (in.level != s.inputs.front().level) fail("scenario inputs must share one polarity");
      name(in);
    }
  }

  void visit(const RegisterMeta& m, bool) {
    name(m.reg, 8);
    if (m.setting) {
      if (m.reg.width != 1) fail("descriptive register must be 1 bit wide");
      if (m.input != Expr::constant(1)) fail("descriptive register must load 1");
      if (!m.enable || m.enable->definition) fail("descriptive register needs a plain trigger");
      if (!m.reset || m.reset->control.definition) fail("descriptive register needs a plain cancel");
      if (m.enable && m.enable->signal.level == ActiveLevel::unspecified) {
        fail("trigger polarity unspecified");
      }
      if (m.reset && m.reset->control.signal.level == ActiveLevel::unspecified) {
        fail("cancel polarity unspecified");
      }
    } else {
      if (m.input.kind == Expr::Kind::constant) fail("register input must read signals");
      expr(m.input, m.reg.name, true);
    }
    if (m.enable) control(*m.enable);
    if (m.reset) control(m.reset->control);
    if (m.clock) name(*m.clock);
  }

  void visit(const SeqGenMeta& m, bool) {
    name(m.out, 3);
    const auto len = static_cast<int>(m.elements.size());
    if (len < 2 || len > std::min(4, cfg.seq_len_max)) {
      fail("sequence length " + std::to_string(len) + " out of range");
    }
    for (unsigned e : m.elements) {
      if (e >= (1u << m.out.width)) fail("sequence element does not fit output width");
    }
    control(m.enable);
    if (m.reset) {
      if (m.reset->control.definition) fail("sequence reset cannot be a defined signal");
      name(m.reset->control.signal);
    }
    name(m.clock);
  }

  void visit(const MultiMeta& m, bool top_level) {
    if (!top_level) fail("nested multi-task");
    if (m.subtasks.size() < 2 || m.subtasks.size() > 4) fail("multi-task needs 2..4 subtasks");
    for (const TaskMeta& sub : m.subtasks) {
      const TaskClass c = class_of(sub);
      if (c != TaskClass::pa && c != TaskClass::da && c != TaskClass::pr) {
        fail("multi-task subtask of class " + std::string(to_string(c)));
      }
      task(sub, false);
    }
  }
};

}  // namespace

std::vector<std::string> check_invariants(const TaskMeta& meta, const GenConfig& cfg) {
  std::vector<std::string> problems;
  InvariantChecker checker{cfg, problems, {}};
  checker.task(meta, true);
  for (const auto& [signal, count] : checker.uses) {
    if (count > 1) problems.push_back("signal name '" + signal + "' used in more than one role");
  }
  return problems;
}

}  // namespace vtask
