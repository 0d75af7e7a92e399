#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace webcorp {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
bool icontains(std::string_view haystack, std::string_view needle);

/// Splits on a single character, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits on runs of ASCII/Unicode whitespace; never yields empty tokens.
std::vector<std::string_view> split_whitespace(std::string_view s);

/// Trims and collapses every whitespace run into one ASCII space.
std::string collapse_whitespace(std::string_view s);

/// Reads a plain-text list: one entry per line, text after '#' dropped,
/// surrounding whitespace trimmed, blank lines skipped.
std::vector<std::string> read_list_file(const std::string &path);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view data);

} // namespace webcorp
