#include "vtask/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <vector>

namespace vtask {

namespace {

constexpr std::array<std::string_view, 6> kHeader = {
    "Type", "Template Name", "# Trained", "# Validated", "# Correct", "Avg. Error R-O"};

struct Section {
  std::string_view title;
  std::vector<TaskClass> classes;
};

const std::array<Section, 2>& sections() {
  static const std::array<Section, 2> s = {{
      {"Prescriptive Tasks", {TaskClass::pa, TaskClass::pr, TaskClass::pg}},
      {"Descriptive and Multi- Tasks", {TaskClass::da, TaskClass::dr, TaskClass::mt}},
  }};
  return s;
}

using Cells = std::array<std::string, 6>;

Cells cells_of(const ReportRow& row, bool first_of_group) {
  return {first_of_group ? std::string(type_label(row.cls)) : std::string(),
          display_name(row),
          std::to_string(row.n_trained),
          std::to_string(row.n_validated),
          std::to_string(row.n_correct),
          format_ro(row.avg_error_ro)};
}

std::vector<const ReportRow*> rows_of(const EvalResult& r, TaskClass c) {
  std::vector<const ReportRow*> out;
  for (const ReportRow& row : r.rows) {
    if (row.cls == c) out.push_back(&row);
  }
  return out;
}

const ClassSummary* summary_of(const EvalResult& r, TaskClass c) {
  for (const ClassSummary& s : r.classes) {
    if (s.cls == c) return &s;
  }
  return nullptr;
}

std::string tally_text(const Tally& t) {
  return format_percent(t.percent()) + "% (" + std::to_string(t.correct) + "/" +
         std::to_string(t.validated) + ")";
}

std::string summary_lines(const EvalResult& r, const Section& section) {
  std::string out;
  for (TaskClass c : section.classes) {
    const ClassSummary* s = summary_of(r, c);
    if (!s) continue;
    out += std::string(type_label(c)) + ": Trained " + tally_text(s->trained) +
           ", Non-Trained " + tally_text(s->non_trained) + "\n";
  }
  return out;
}

std::string pad(const std::string& s, std::size_t width, bool right) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

std::string text_table(const EvalResult& r, const Section& section) {
  std::vector<Cells> body;
  for (TaskClass c : section.classes) {
    const auto rows = rows_of(r, c);
    for (std::size_t i = 0; i < rows.size(); ++i) body.push_back(cells_of(*rows[i], i == 0));
  }
  std::array<std::size_t, 6> width{};
  for (std::size_t k = 0; k < 6; ++k) {
    width[k] = kHeader[k].size();
    for (const Cells& row : body) width[k] = std::max(width[k], row[k].size());
  }
  auto line = [&](const Cells& cells) {
    std::string out;
    for (std::size_t k = 0; k < 6; ++k) {
      if (k > 0) out += "  ";
      out += pad(cells[k], width[k], k >= 2);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  Cells header;
  for (std::size_t k = 0; k < 6; ++k) header[k] = std::string(kHeader[k]);
  Cells rule;
  for (std::size_t k = 0; k < 6; ++k) rule[k] = std::string(width[k], '-');
  std::string out = std::string(section.title) + "\n" + line(header) + line(rule);
  for (const Cells& row : body) out += line(row);
  return out;
}

std::string pipe_table(const EvalResult& r, const Section& section) {
  std::string out = "**" + std::string(section.title) + "**\n\n";
  out += "|";
  for (std::string_view h : kHeader) out += " " + std::string(h) + " |";
  out += "\n|---|---|---:|---:|---:|---:|\n";
  for (TaskClass c : section.classes) {
    const auto rows = rows_of(r, c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Cells cells = cells_of(*rows[i], i == 0);
      if (!rows[i]->trained) cells[1] = "**" + cells[1] + "**";
      out += "|";
      for (const std::string& cell : cells) out += " " + cell + " |";
      out += "\n";
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::text;
  if (text == "csv") return ReportFormat::csv;
  if (text == "pipe") return ReportFormat::pipe;
  return std::nullopt;
}

std::string_view type_label(TaskClass c) {
  switch (c) {
    case TaskClass::pa: return "Assignment";
    case TaskClass::pr: return "Register";
    case TaskClass::pg: return "Seq. Generator";
    case TaskClass::da: return "Assign.";
    case TaskClass::dr: return "Register";
    case TaskClass::mt: return "M-T";
  }
  return "?";
}

std::string display_name(const ReportRow& row) {
  if (row.cls == TaskClass::mt) return row.trained ? "Trained" : "Non-Trained";
  return row.template_name;
}

std::string format_ro(const std::optional<double>& value) {
  if (!value) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *value);
  return buf;
}

std::string format_percent(const std::optional<double>& value) {
  if (!value) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *value);
  return buf;
}

std::string render_report(const EvalResult& result, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::csv) {
    for (std::size_t k = 0; k < kHeader.size(); ++k) {
      out += (k ? "," : "") + std::string(kHeader[k]);
    }
    out += "\n";
    for (const Section& section : sections()) {
      for (TaskClass c : section.classes) {
        for (const ReportRow* row : rows_of(result, c)) {
          const Cells cells = cells_of(*row, true);
          for (std::size_t k = 0; k < cells.size(); ++k) {
            out += (k ? "," : "") + csv_field(cells[k]);
          }
          out += "\n";
        }
      }
    }
    return out;
  }
  bool first = true;
  for (const Section& section : sections()) {
    bool any = false;
    for (TaskClass c : section.classes) any = any || !rows_of(result, c).empty();
    if (!any) continue;
    if (!first) out += "\n";
    first = false;
    out += format == ReportFormat::pipe ? pipe_table(result, section) : text_table(result, section);
    out += (format == ReportFormat::pipe ? "\n" : "") + summary_lines(result, section);
  }
  if (!first) out += "\n";
  out += "Overall: " + tally_text(result.overall) + "\n";
  return out;
}

}  // namespace vtask
