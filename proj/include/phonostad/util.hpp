#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace phonostad {

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

/// Non-empty and only ASCII letters.
bool is_alpha_word(std::string_view s) noexcept;

/// Reads a text file into lines, stripping '\r'. Throws LoadError if it cannot be opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

/// Unicode code points of a UTF-8 string, each as its own UTF-8 substring.
std::vector<std::string> utf8_chars(std::string_view s);
std::size_t utf8_length(std::string_view s);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(std::string_view s);

/// Minimal CSV splitter with double-quote support, for files this toolkit writes.
std::vector<std::string> parse_csv_line(std::string_view line);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Shortest round-trip decimal for a double ("%.17g" trimmed).
std::string format_double(double v);

}  // namespace phonostad
