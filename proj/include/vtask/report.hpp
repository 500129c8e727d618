#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vtask/evalkit.hpp"

namespace vtask {

enum class ReportFormat { text, csv, pipe };

std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Group label shown in the Type column ("Assignment", "Seq. Generator",
/// "Assign.", "M-T", ...).
std::string_view type_label(TaskClass c);

/// Template Name cell: the template id, or "Trained"/"Non-Trained" for the
/// two multi-task pools.
std::string display_name(const ReportRow& row);

/// Two tables (prescriptive, then descriptive and multi-task) with columns
/// Type | Template Name | # Trained | # Validated | # Correct | Avg. Error R-O,
/// followed by per-class and overall percent-correct lines. The csv format
/// carries the rows only.
std::string render_report(const EvalResult& result, ReportFormat format);

/// "0.947", or "--" when absent.
std::string format_ro(const std::optional<double>& value);

/// "99.700", or "--" when nothing was validated.
std::string format_percent(const std::optional<double>& value);

}  // namespace vtask
