#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vtask {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
bool starts_with_upper(std::string_view s);

/// Throws Error(io) when the file cannot be read/written.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace vtask
