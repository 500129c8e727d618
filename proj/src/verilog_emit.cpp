#include "vtask/verilog_emit.hpp"

#include <algorithm>
#include <sstream>

#include "vtask/error.hpp"

namespace vtask {

namespace {

bool associative(Op op) { return op == Op::And || op == Op::Or || op == Op::Xor; }

Op base_of(Op op) {
  if (op == Op::Nand) return Op::And;
  if (op == Op::Nor) return Op::Or;
  if (op == Op::Xnor) return Op::Xor;
  return op;
}

bool inverted(Op op) { return op == Op::Nand || op == Op::Nor || op == Op::Xnor; }

std::string operand(const Expr& sub, const Expr& parent, bool left) {
  if (sub.kind != Expr::Kind::binop) return emit_expr(sub);
  const bool flat = left && !inverted(parent.op) && !inverted(sub.op) &&
                    sub.op == parent.op && associative(parent.op);
  if (flat || inverted(sub.op)) return emit_expr(sub);
  return "(" + emit_expr(sub) + ")";
}

Expr negated(Expr e) {
  if (e.kind == Expr::Kind::negate) return std::move(e.operands[0]);
  return Expr::negate(std::move(e));
}

Expr chain(Op op, std::vector<Expr> terms) {
  Expr acc = std::move(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) acc = Expr::binop(op, std::move(acc), std::move(terms[i]));
  return acc;
}

std::string literal(unsigned value, int width) {
  std::string bits;
  for (int b = width - 1; b >= 0; --b) bits += ((value >> b) & 1u) ? '1' : '0';
  return std::to_string(width) + "'b" + bits;
}

std::string decl(const SignalRef& s) {
  if (s.width == 1) return "reg " + s.name + ";";
  return "reg [" + std::to_string(s.width - 1) + ":0] " + s.name + ";";
}

std::string test(const SignalRef& s) {
  return s.level == ActiveLevel::low ? "!" + s.name : s.name;
}

std::string edge(const SignalRef& s) {
  return (s.level == ActiveLevel::low ? "negedge " : "posedge ") + s.name;
}

class Writer {
 public:
  void line(int indent, const std::string& text) {
    if (!first_) out_ << '\n';
    first_ = false;
    out_ << std::string(static_cast<std::size_t>(indent) * 2, ' ') << text;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool first_ = true;
};

void emit_definition(Writer& w, const ControlSignal& c) {
  if (c.definition) w.line(0, "assign " + c.signal.name + " = " + emit_expr(*c.definition) + ";");
}

std::string sensitivity(const SignalRef& clock, const std::optional<ResetSpec>& reset) {
  std::string s = "always @(posedge " + clock.name;
  if (reset && !reset->sync) s += " or " + edge(reset->control.signal);
  return s + ") begin";
}

void emit_register(Writer& w, const RegisterMeta& r) {
  if (r.enable) emit_definition(w, *r.enable);
  if (r.reset) emit_definition(w, r.reset->control);
  if (!r.clock) w.line(0, "// assume clock clk");
  w.line(0, decl(r.reg));
  const SignalRef clock = r.clock.value_or(SignalRef{"clk"});
  w.line(0, sensitivity(clock, r.reset));
  const std::string load = r.reg.name + " <= " + emit_expr(r.input) + ";";
  if (r.reset) {
    w.line(1, "if(" + test(r.reset->control.signal) + ") begin");
    w.line(2, r.reg.name + " <= 0;");
    if (r.enable) {
      w.line(1, "end else if(" + test(r.enable->signal) + ") begin");
    } else {
      w.line(1, "end else begin");
    }
    w.line(2, load);
    w.line(1, "end");
  } else if (r.enable) {
    w.line(1, "if(" + test(r.enable->signal) + ") begin");
    w.line(2, load);
    w.line(1, "end");
  } else {
    w.line(1, load);
  }
  w.line(0, "end");
}

void emit_seqgen(Writer& w, const SeqGenMeta& g) {
  emit_definition(w, g.enable);
  w.line(0, decl(g.out));
  const std::size_t k = g.elements.size();
  std::string states;
  for (std::size_t i = 0; i < k; ++i) states += (i ? ", s" : "s") + std::to_string(i);
  w.line(0, "enum {" + states + "} state;");
  w.line(0, sensitivity(g.clock, g.reset));
  int depth = 1;
  if (g.reset) {
    w.line(1, "if(" + test(g.reset->control.signal) + ") begin");
    w.line(2, "state <= s0;");
    w.line(2, g.out.name + " <= " + literal(g.elements.front(), g.out.width) + ";");
    w.line(1, "end else begin");
    depth = 2;
  }
  w.line(depth, "unique case (state)");
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t next = (i + 1) % k;
    w.line(depth + 1, "s" + std::to_string(i) + ": if(" + test(g.enable.signal) + ") begin");
    w.line(depth + 2, "state <= s" + std::to_string(next) + ";");
    w.line(depth + 2, g.out.name + " <= " + literal(g.elements[next], g.out.width) + ";");
    w.line(depth + 1, "end");
  }
  w.line(depth, "endcase");
  if (g.reset) w.line(1, "end");
  w.line(0, "end");
}

void emit_into(Writer& w, const TaskMeta& meta) {
  struct Visitor {
    Writer& w;
    void operator()(const AssignmentMeta& a) const {
      const Expr rhs = std::holds_alternative<Expr>(a.source)
                           ? std::get<Expr>(a.source)
                           : reduce_scenario(std::get<Scenario>(a.source));
      w.line(0, "assign " + a.target.name + " = " + emit_expr(rhs) + ";");
    }
    void operator()(const RegisterMeta& r) const { emit_register(w, r); }
    void operator()(const SeqGenMeta& g) const { emit_seqgen(w, g); }
    void operator()(const MultiMeta& m) const {
      for (const TaskMeta& sub : m.subtasks) emit_into(w, sub);
    }
  };
  std::visit(Visitor{w}, meta.node);
}

}  // namespace

std::string_view verilog_symbol(Op op) {
  switch (op) {
    case Op::And:
    case Op::Nand: return "&";
    case Op::Or:
    case Op::Nor: return "|";
    case Op::Xor:
    case Op::Xnor: return "^";
    case Op::Ge: return ">=";
    case Op::Gt: return ">";
    case Op::Mod: return "%";
  }
  return "?";
}

std::string emit_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::var: return e.signal.name;
    case Expr::Kind::constant: return std::to_string(e.value);
    case Expr::Kind::negate: {
      const Expr& inner = e.operands[0];
      if (inner.kind == Expr::Kind::binop && !inverted(inner.op)) {
        return "!(" + emit_expr(inner) + ")";
      }
      return "!" + emit_expr(inner);
    }
    case Expr::Kind::binop: {
      const std::string body = operand(e.operands[0], e, true) + " " +
                               std::string(verilog_symbol(e.op)) + " " +
                               operand(e.operands[1], e, false);
      if (inverted(e.op)) return "!(" + body + ")";
      return body;
    }
  }
  return {};
}

Expr reduce_scenario(const Scenario& s) {
  if (s.inputs.empty()) throw Error(ErrorKind::internal, "scenario without inputs");
  const Op join = s.quantifier == Quantifier::any ? Op::Or : Op::And;
  const bool all_low = std::all_of(s.inputs.begin(), s.inputs.end(), [](const SignalRef& in) {
    return in.level == ActiveLevel::low;
  });
  std::vector<Expr> terms;
  Expr f;
  if (all_low) {
    // any(!x) = !(all x), all(!x) = !(any x)
    for (const SignalRef& in : s.inputs) terms.push_back(Expr::var(in.name));
    f = Expr::negate(chain(join == Op::Or ? Op::And : Op::Or, std::move(terms)));
  } else {
    for (const SignalRef& in : s.inputs) {
      Expr v = Expr::var(in.name);
      terms.push_back(in.level == ActiveLevel::low ? Expr::negate(std::move(v)) : std::move(v));
    }
    f = chain(join, std::move(terms));
  }
  if (s.output.level == ActiveLevel::low) f = negated(std::move(f));
  return f;
}

std::string emit(const TaskMeta& meta) {
  Writer w;
  emit_into(w, meta);
  return w.str();
}

}  // namespace vtask
