#pragma once

#include <string>
#include <string_view>

namespace webcorp::unicode {

/// General category P*.
bool is_punctuation(char32_t cp);
/// General category L*.
bool is_letter(char32_t cp);
bool is_whitespace(char32_t cp);
bool is_digit(char32_t cp);
char32_t to_lower(char32_t cp);

/// Per-scalar simple lowercase mapping of a UTF-8 string.
std::string to_lower(std::string_view s);

} // namespace webcorp::unicode
