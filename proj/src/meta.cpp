#include "vtask/meta.hpp"

#include <algorithm>

namespace vtask {

std::string_view to_string(TaskClass c) {
  switch (c) {
    case TaskClass::pa: return "pa";
    case TaskClass::da: return "da";
    case TaskClass::pr: return "pr";
    case TaskClass::dr: return "dr";
    case TaskClass::pg: return "pg";
    case TaskClass::mt: return "mt";
  }
  return "??";
}

std::optional<TaskClass> parse_task_class(std::string_view text) {
  for (TaskClass c : kAllClasses) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view to_string(ActiveLevel level) {
  switch (level) {
    case ActiveLevel::unspecified: return "unspecified";
    case ActiveLevel::high: return "high";
    case ActiveLevel::low: return "low";
  }
  return "unspecified";
}

std::string_view to_string(Op op) {
  switch (op) {
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Nand: return "nand";
    case Op::Nor: return "nor";
    case Op::Xor: return "xor";
    case Op::Xnor: return "xnor";
    case Op::Ge: return "ge";
    case Op::Gt: return "gt";
    case Op::Mod: return "mod";
  }
  return "and";
}

std::optional<Op> parse_op(std::string_view text) {
  for (Op op : kAllOps) {
    if (to_string(op) == text) return op;
  }
  return std::nullopt;
}

bool is_boolean(Op op) {
  return std::find(kBooleanOps.begin(), kBooleanOps.end(), op) != kBooleanOps.end();
}

Expr Expr::var(SignalRef s) {
  Expr e;
  e.kind = Kind::var;
  e.signal = std::move(s);
  return e;
}

Expr Expr::var(std::string name) { return var(SignalRef{std::move(name)}); }

Expr Expr::constant(unsigned v) {
  Expr e;
  e.kind = Kind::constant;
  e.value = v;
  return e;
}

Expr Expr::negate(Expr inner) {
  Expr e;
  e.kind = Kind::negate;
  e.operands.push_back(std::move(inner));
  return e;
}

Expr Expr::binop(Op op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::binop;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

int Expr::depth() const {
  int deepest = 0;
  for (const Expr& sub : operands) deepest = std::max(deepest, sub.depth());
  return 1 + deepest;
}

void Expr::collect_signals(std::vector<std::string>& out) const {
  if (kind == Kind::var) out.push_back(signal.name);
  for (const Expr& sub : operands) sub.collect_signals(out);
}

std::string_view to_string(Quantifier q) {
  return q == Quantifier::any ? "any" : "all";
}

bool operator==(const MultiMeta& a, const MultiMeta& b) {
  return a.subtasks == b.subtasks;
}

TaskClass class_of(const TaskMeta& meta) {
  struct Visitor {
    TaskClass operator()(const AssignmentMeta& m) const {
      return std::holds_alternative<Scenario>(m.source) ? TaskClass::da : TaskClass::pa;
    }
    TaskClass operator()(const RegisterMeta& m) const {
      return m.setting ? TaskClass::dr : TaskClass::pr;
    }
    TaskClass operator()(const SeqGenMeta&) const { return TaskClass::pg; }
    TaskClass operator()(const MultiMeta&) const { return TaskClass::mt; }
  };
  return std::visit(Visitor{}, meta.node);
}

std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::enable: return "enable";
    case Feature::enable_defined: return "enable_defined";
    case Feature::reset: return "reset";
    case Feature::reset_sync: return "reset_sync";
    case Feature::reset_async: return "reset_async";
    case Feature::reset_defined: return "reset_defined";
    case Feature::clock: return "clock";
    case Feature::input_defined: return "input_defined";
  }
  return "?";
}

std::optional<Feature> parse_feature(std::string_view text) {
  for (Feature f : kAllFeatures) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

namespace {

bool reset_feature(const std::optional<ResetSpec>& reset, Feature f) {
  switch (f) {
    case Feature::reset: return reset.has_value();
    case Feature::reset_sync: return reset && reset->sync;
    case Feature::reset_async: return reset && !reset->sync;
    case Feature::reset_defined: return reset && reset->control.definition.has_value();
    default: return false;
  }
}

}  // namespace

bool has_feature(const TaskMeta& meta, Feature f) {
  if (const auto* r = std::get_if<RegisterMeta>(&meta.node)) {
    switch (f) {
      case Feature::enable: return r->enable.has_value();
      case Feature::enable_defined:
        return r->enable && r->enable->definition.has_value();
      case Feature::clock: return r->clock.has_value();
      case Feature::input_defined: return r->input.kind == Expr::Kind::binop;
      default: return reset_feature(r->reset, f);
    }
  }
  if (const auto* g = std::get_if<SeqGenMeta>(&meta.node)) {
    switch (f) {
      case Feature::enable: return true;
      case Feature::enable_defined: return g->enable.definition.has_value();
      case Feature::clock: return true;
      case Feature::input_defined: return false;
      default: return reset_feature(g->reset, f);
    }
  }
  return false;
}

std::vector<Feature> optional_features(TaskClass c) {
  switch (c) {
    case TaskClass::pr:
      return {Feature::enable,      Feature::enable_defined, Feature::reset,
              Feature::reset_sync,  Feature::reset_async,    Feature::reset_defined,
              Feature::clock,       Feature::input_defined};
    case TaskClass::pg:
      return {Feature::enable_defined, Feature::reset, Feature::reset_sync,
              Feature::reset_async};
    case TaskClass::dr:
      return {Feature::reset_sync, Feature::reset_async, Feature::clock};
    default:
      return {};
  }
}

}  // namespace vtask
