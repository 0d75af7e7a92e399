#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one scalar value starting at `pos`. Invalid or truncated
/// sequences yield U+FFFD and consume exactly one byte.
char32_t decode_one(std::string_view s, std::size_t &pos, bool *invalid = nullptr);

/// Decodes the whole string; invalid bytes become U+FFFD.
std::u32string decode(std::string_view s, bool *lossy = nullptr);

void append(std::string &out, char32_t cp);
std::string encode(std::u32string_view s);

/// Re-encodes `s` replacing every invalid sequence with U+FFFD.
std::string sanitize(std::string_view s, bool *lossy = nullptr);

bool is_valid(std::string_view s);

/// Number of Unicode scalar values (invalid bytes count one each).
std::size_t length(std::string_view s);

/// Byte offset of the `n`-th scalar value (clamped to s.size()).
std::size_t byte_offset(std::string_view s, std::size_t n);

/// Substring by scalar-value positions [start, start+count).
std::string substr(std::string_view s, std::size_t start, std::size_t count);

/// Maps each byte offset to the scalar index it belongs to; the result has
/// s.size()+1 entries so end offsets map too.
std::vector<std::size_t> byte_to_scalar_index(std::string_view s);

} // namespace webcorp::utf8
