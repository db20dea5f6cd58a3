#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace emosent {

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory followed by rename, so a
// failure mid-write leaves any existing file untouched.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Splits on '\n'; a trailing newline does not produce an empty last line.
// '\r' before a newline is dropped.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split_on(std::string_view line, char sep);

// Escapes '\\', '\t', '\n', '\r' for single-line record fields.
std::string escape_field(std::string_view raw);
std::string unescape_field(std::string_view escaped);

// Minimal CSV line splitter with double-quote support.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace emosent
