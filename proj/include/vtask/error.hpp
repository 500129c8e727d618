#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vtask {

/// Broad category of a failure; the CLI maps these onto exit codes.
enum class ErrorKind {
  config,             // contradictory or malformed configuration
  exhaustion,         // bounded retry loop gave up
  no_suitable_template,
  unfilled_slot,      // template/meta mismatch that escaped selection
  no_match,           // translator: no template matched
  ambiguous_match,    // translator: several templates produced different code
  parse,              // malformed input file
  duplicate_key,
  missing_predictions,
  io,
  internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vtask
