#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace webcorp::clean {

enum class PiiKind { email, phone, ip };

std::string_view pii_kind_name(PiiKind k);
std::optional<PiiKind> parse_pii_kind(std::string_view name);

/// [start, end) in Unicode scalar values.
struct PiiSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    PiiKind kind = PiiKind::email;

    bool operator==(const PiiSpan &) const = default;
};

/// Baseline detectors:
///   email  local@domain.tld, ASCII local part, alphabetic TLD of 2+ letters
///   phone  '+' and 8-15 digits, single ' ', '-' or '.' allowed between digits
///   ip     dotted-quad IPv4, octets 0-255 without leading zeros
/// Overlaps resolve leftmost first, then longest. Result is sorted.
std::vector<PiiSpan> detect_pii(std::string_view text);

} // namespace webcorp::clean
