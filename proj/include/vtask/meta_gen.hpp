#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtask/meta.hpp"
#include "vtask/rng.hpp"

namespace vtask {

/// Knobs for metastructure sampling. Every field maps to one config key of
/// the same name (see docs/formats.md).
struct GenConfig {
  int expr_depth_max = 2;   // 1: single signals only; 2: one binary operator
  int seq_len_min = 2;
  int seq_len_max = 4;
  int width_min = 1;        // register widths
  int width_max = 8;
  int seq_width_min = 1;    // sequence generator output widths
  int seq_width_max = 3;
  int scenario_inputs_min = 2;
  int scenario_inputs_max = 4;
  int multi_min = 2;
  int multi_max = 4;

  double p_enable = 0.5;
  double p_reset = 0.5;
  double p_reset_sync = 0.5;
  double p_clock_explicit = 0.5;
  double p_defined = 0.5;         // enable/reset given as a defined expression
  double p_input_compound = 0.5;  // register input is an operator expression
  double p_active_low = 0.5;      // scenario signal polarities
  double p_quantifier_all = 0.5;

  /// Throws Error(config) when a cap is out of range or contradictory.
  void validate() const;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

/// Name and member of each GenConfig knob, in declaration order: the keys of
/// the manifest "gen" object and of the CLI's generation flags.
struct GenConfigField {
  std::string_view name;
  int GenConfig::*int_member = nullptr;
  double GenConfig::*real_member = nullptr;
};

std::span<const GenConfigField> gen_config_fields();

/// Reserved words never used as signal names: the Verilog-2005 keyword list,
/// the SystemVerilog words the emitter relies on, and names the emitter
/// itself introduces (clk, state, s0..s9).
bool is_reserved_word(std::string_view word);

/// `[a-z][a-z0-9]{0,2}` and not reserved.
bool is_valid_identifier(std::string_view name);

/// Draws a fresh 1-3 character name not already in `taken`, and inserts it.
/// Throws Error(exhaustion) after a bounded number of collisions.
std::string sample_identifier(RngStream& rng, std::set<std::string>& taken);

/// Throws Error(config) if cfg is invalid or depth 1 makes the class
/// impossible (prescriptive assignments always need an operator).
TaskMeta sample_meta(TaskClass cls, RngStream& rng, const GenConfig& cfg,
                     const Capabilities& caps = {});

/// Same, but allocating names from a shared pool (multi-task subtasks).
TaskMeta sample_meta(TaskClass cls, RngStream& rng, const GenConfig& cfg,
                     const Capabilities& caps, std::set<std::string>& taken);

/// One message per violated TaskMeta invariant; empty when well formed.
std::vector<std::string> check_invariants(const TaskMeta& meta,
                                          const GenConfig& cfg = {});

/// Cascaded setting sub-templates for descriptive tasks.
struct ScenarioPlace {
  std::string place;
  struct Sensor {
    std::string sensor, plural, condition;
  };
  struct Device {
    std::string device, action;
  };
  std::vector<Sensor> sensors;
  std::vector<Device> devices;
};

struct RegisterSystem {
  std::string system, trigger_device, trigger_action;
  std::string output_device, on_phrase, off_phrase;
};

struct CancelDevice {
  std::string device, action;
};

std::span<const ScenarioPlace> scenario_places();
std::span<const RegisterSystem> register_systems();
std::span<const CancelDevice> cancel_devices();

}  // namespace vtask
