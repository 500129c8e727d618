#include "vtask/error.hpp"

namespace vtask {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::exhaustion: return "exhaustion";
    case ErrorKind::no_suitable_template: return "no_suitable_template";
    case ErrorKind::unfilled_slot: return "unfilled_slot";
    case ErrorKind::no_match: return "no_match";
    case ErrorKind::ambiguous_match: return "ambiguous_match";
    case ErrorKind::parse: return "parse";
    case ErrorKind::duplicate_key: return "duplicate_key";
    case ErrorKind::missing_predictions: return "missing_predictions";
    case ErrorKind::io: return "io";
    case ErrorKind::internal: return "internal";
  }
  return "internal";
}

}  // namespace vtask
