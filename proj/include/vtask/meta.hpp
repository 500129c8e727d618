#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vtask {

/// Template/task family. Prefix letters: p = prescriptive, d = descriptive;
/// a = assignment, r = register, g = sequence generator; mt = multi-task.
enum class TaskClass { pa, da, pr, dr, pg, mt };

inline constexpr std::array<TaskClass, 6> kAllClasses = {
    TaskClass::pa, TaskClass::da, TaskClass::pr,
    TaskClass::dr, TaskClass::pg, TaskClass::mt};

std::string_view to_string(TaskClass c);
std::optional<TaskClass> parse_task_class(std::string_view text);

enum class ActiveLevel { unspecified, high, low };
std::string_view to_string(ActiveLevel level);

struct SignalRef {
  std::string name;
  int width = 1;
  ActiveLevel level = ActiveLevel::unspecified;

  friend bool operator==(const SignalRef&, const SignalRef&) = default;
};

enum class Op { And, Or, Nand, Nor, Xor, Xnor, Ge, Gt, Mod };

inline constexpr std::array<Op, 9> kAllOps = {Op::And, Op::Or,  Op::Nand,
                                              Op::Nor, Op::Xor, Op::Xnor,
                                              Op::Ge,  Op::Gt,  Op::Mod};
inline constexpr std::array<Op, 6> kBooleanOps = {
    Op::And, Op::Or, Op::Nand, Op::Nor, Op::Xor, Op::Xnor};

/// Lowercase mnemonic ("and", "xnor", "ge", ...), used as lexicon key suffix.
std::string_view to_string(Op op);
std::optional<Op> parse_op(std::string_view text);
bool is_boolean(Op op);

/// Expression tree over signals. Constants only occur as the loaded value of
/// a set/clear register ("l <= 1").
struct Expr {
  enum class Kind { var, constant, negate, binop };

  Kind kind = Kind::var;
  SignalRef signal;           // var
  unsigned value = 0;         // constant
  Op op = Op::And;            // binop
  std::vector<Expr> operands; // negate: 1, binop: 2

  static Expr var(SignalRef s);
  static Expr var(std::string name);
  static Expr constant(unsigned v);
  static Expr negate(Expr e);
  static Expr binop(Op op, Expr lhs, Expr rhs);

  /// var/constant = 1; each operator level adds one.
  int depth() const;
  void collect_signals(std::vector<std::string>& out) const;

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class Quantifier { any, all };
std::string_view to_string(Quantifier q);

/// Setting phrases of a combinational scenario ("A house has three
/// active-low alarm detector triggered sensors ...").
struct ScenarioSetting {
  std::string place;          // "house"
  std::string sensor;         // "alarm detector triggered"
  std::string sensor_plural;  // "detectors"
  std::string condition;      // "are triggered"
  std::string device;         // "light"
  std::string action;         // "activates"

  friend bool operator==(const ScenarioSetting&, const ScenarioSetting&) = default;
};

struct Scenario {
  ScenarioSetting setting;
  std::vector<SignalRef> inputs;  // 2..4, level high or low
  SignalRef output;               // level high or low
  Quantifier quantifier = Quantifier::any;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Setting phrases of a set/clear register scenario (call button, alarm).
struct RegisterSetting {
  std::string system;          // "a call button (e.g., in an airplane or hospital)"
  std::string trigger_device;  // "call button"
  std::string trigger_action;  // "pressed"
  std::string output_device;   // "call light"
  std::string on_phrase;       // "turn on"
  std::string off_phrase;      // "turn off"
  std::string cancel_device;   // "cancel button"
  std::string cancel_action;   // "pressed"

  friend bool operator==(const RegisterSetting&, const RegisterSetting&) = default;
};

/// An enable or reset input: either a plain signal or a named signal defined
/// by an expression (emitted as a separate continuous assignment).
struct ControlSignal {
  SignalRef signal;
  std::optional<Expr> definition;

  friend bool operator==(const ControlSignal&, const ControlSignal&) = default;
};

struct ResetSpec {
  ControlSignal control;
  bool sync = true;

  friend bool operator==(const ResetSpec&, const ResetSpec&) = default;
};

struct AssignmentMeta {
  SignalRef target;
  std::variant<Expr, Scenario> source;

  friend bool operator==(const AssignmentMeta&, const AssignmentMeta&) = default;
};

struct RegisterMeta {
  SignalRef reg;
  Expr input;
  std::optional<ControlSignal> enable;
  std::optional<ResetSpec> reset;
  std::optional<SignalRef> clock;          // nullopt: inferred `clk`
  std::optional<RegisterSetting> setting;  // present for descriptive registers

  friend bool operator==(const RegisterMeta&, const RegisterMeta&) = default;
};

struct SeqGenMeta {
  SignalRef out;                    // width 1..3
  std::vector<unsigned> elements;   // 2..4 patterns of out.width bits
  ControlSignal enable;
  std::optional<ResetSpec> reset;
  SignalRef clock;

  friend bool operator==(const SeqGenMeta&, const SeqGenMeta&) = default;
};

struct TaskMeta;

struct MultiMeta {
  std::vector<TaskMeta> subtasks;

  friend bool operator==(const MultiMeta&, const MultiMeta&);
};

struct TaskMeta {
  std::variant<AssignmentMeta, RegisterMeta, SeqGenMeta, MultiMeta> node;

  friend bool operator==(const TaskMeta&, const TaskMeta&) = default;
};

TaskClass class_of(const TaskMeta& meta);

/// Optional features a template clause can be guarded on.
enum class Feature {
  enable,
  enable_defined,
  reset,
  reset_sync,
  reset_async,
  reset_defined,
  clock,          // explicit clock signal (absent: inferred clk)
  input_defined,  // register input is a compound expression
};

inline constexpr std::array<Feature, 8> kAllFeatures = {
    Feature::enable,       Feature::enable_defined, Feature::reset,
    Feature::reset_sync,   Feature::reset_async,    Feature::reset_defined,
    Feature::clock,        Feature::input_defined};

std::string_view to_string(Feature f);
std::optional<Feature> parse_feature(std::string_view text);

/// Truth of a feature for a (non-multi) task.
bool has_feature(const TaskMeta& meta, Feature f);

/// Features that vary per instance for a class (the rest are fixed).
std::vector<Feature> optional_features(TaskClass c);

/// Which presence states of each feature a template can express.
struct Capabilities {
  struct Support {
    bool present = true;
    bool absent = true;
  };
  std::array<Support, kAllFeatures.size()> support{};

  Support& operator[](Feature f) { return support[static_cast<std::size_t>(f)]; }
  const Support& operator[](Feature f) const {
    return support[static_cast<std::size_t>(f)];
  }
};

}  // namespace vtask
