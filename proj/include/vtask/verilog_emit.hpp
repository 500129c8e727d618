#pragma once

#include <string>

#include "vtask/meta.hpp"

namespace vtask {

/// Verilog operator spelling; nand/nor/xnor share the symbol of and/or/xor
/// and are emitted as `!(x OP y)`.
std::string_view verilog_symbol(Op op);

/// Infix Verilog for an expression, parenthesising nested operators except
/// for flat chains of the same associative operator.
std::string emit_expr(const Expr& e);

/// Boolean function of a descriptive scenario: the output is active when
/// any/all inputs are active. All-low inputs are folded with De Morgan into a
/// single leading negation; an active-low output negates once more and
/// double negations cancel.
Expr reduce_scenario(const Scenario& s);

/// Canonical snippet for a task, without a trailing newline. Multi-tasks join
/// their subtask snippets with "\n".
std::string emit(const TaskMeta& meta);

}  // namespace vtask
