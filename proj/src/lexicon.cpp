#include <algorithm>
#include <cstdlib>

#include "vtask/error.hpp"
#include "vtask/template_engine.hpp"
#include "vtask/text_util.hpp"

namespace vtask {

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("VTASK_DATA_DIR"); env && *env) return env;
  return VTASK_DATA_DIR;
}

Lexicon Lexicon::parse(std::string_view text, std::string_view origin) {
  Lexicon lex;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::parse, where + ": expected 'key = form | form'");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw Error(ErrorKind::parse, where + ": empty key");
    if (lex.entries_.contains(key)) {
      throw Error(ErrorKind::parse, where + ": duplicate key '" + key + "'");
    }
    std::vector<std::string> forms;
    for (std::string_view form : split(line.substr(eq + 1), '|')) {
      form = trim(form);
      if (form.empty()) throw Error(ErrorKind::parse, where + ": empty surface form");
      forms.emplace_back(form);
    }
    lex.entries_.emplace(std::move(key), std::move(forms));
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.string());
}

Lexicon Lexicon::load_default() { return load(default_data_dir() / "lexicon.txt"); }

std::span<const std::string> Lexicon::forms(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  return it->second;
}

void Lexicon::set(std::string key, std::vector<std::string> forms) {
  entries_[std::move(key)] = std::move(forms);
}

std::string Lexicon::op_key(Op op) { return "op." + std::string(to_string(op)); }

std::vector<std::string> Lexicon::validate() const {
  std::vector<std::string> problems;
  for (Op op : kAllOps) {
    if (forms(op_key(op)).empty()) problems.push_back("no surface form for " + op_key(op));
  }
  for (const auto& [key, forms] : entries_) {
    if (forms.empty()) problems.push_back(key + " has no surface forms");
    for (const std::string& form : forms) {
      if (trim(form).empty()) problems.push_back(key + " has an empty surface form");
      const bool lower = std::none_of(form.begin(), form.end(),
                                      [](char c) { return c >= 'A' && c <= 'Z'; });
      if (!lower) problems.push_back(key + " form '" + form + "' is not lowercase");
    }
  }
  return problems;
}

}  // namespace vtask
