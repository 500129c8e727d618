#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "vtask/corpus_io.hpp"
#include "vtask/template_engine.hpp"

namespace vtask::testing {

inline const Registry& registry() {
  static const Registry r = Registry::load_default();
  return r;
}

inline const Lexicon& lexicon() {
  static const Lexicon l = Lexicon::load_default();
  return l;
}

inline Plan plan_of(const std::map<std::string, std::size_t>& counts) {
  std::string text;
  for (const auto& [id, n] : counts) text += id + " = " + std::to_string(n) + "\n";
  return Plan::parse(text);
}

inline std::filesystem::path source_dir() { return VTASK_SOURCE_DIR; }

/// The call-button set/clear register: trigger `b`, synchronous cancel `r`,
/// output `l`, inferred clock.
inline TaskMeta call_button_meta() {
  RegisterMeta r;
  r.reg = SignalRef{"l"};
  r.input = Expr::constant(1);
  r.enable = ControlSignal{SignalRef{"b", 1, ActiveLevel::high}, std::nullopt};
  r.reset = ResetSpec{ControlSignal{SignalRef{"r", 1, ActiveLevel::high}, std::nullopt}, true};
  r.setting = RegisterSetting{"a call button (e.g., in an airplane or hospital)",
                              "call button",
                              "pressed",
                              "call light",
                              "turn on",
                              "turn off",
                              "cancel button",
                              "pressed"};
  return TaskMeta{r};
}

inline constexpr std::string_view kCallButtonEnglish =
    "Write sequential code for a call button (e.g., in an airplane or hospital). If the call "
    "button `b' is pressed (= 1) then the call light `l' should turn on (= 1). The output call "
    "light `l' should turn off (= 0) when the synchronous cancel button `r' is pressed (= 1).";

inline constexpr std::string_view kCallButtonVerilog =
    "// assume clock clk\n"
    "reg l;\n"
    "always @(posedge clk) begin\n"
    "  if(r) begin\n"
    "    l <= 0;\n"
    "  end else if(b) begin\n"
    "    l <= 1;\n"
    "  end\n"
    "end";

/// The listing exactly as typeset: one-space indentation and a trailing
/// blank after the second `begin`.
inline constexpr std::string_view kCallButtonListing =
    "// assume clock clk\n"
    "reg l;\n"
    "always @(posedge clk) begin\n"
    " if(r) begin\n"
    "  l <= 0;\n"
    " end else if(b) begin \n"
    "  l <= 1;\n"
    " end\n"
    "end";

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("vtask-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace vtask::testing
