#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace webcorp {

/// MurmurHash64A over raw bytes.
std::uint64_t hash64(std::string_view data, std::uint64_t seed);

/// splitmix64 step: advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t &state);

std::array<unsigned char, 32> sha256(std::string_view data);
std::string sha256_hex(std::string_view data);
std::string to_hex(const unsigned char *data, std::size_t len);

std::string base64_encode(std::string_view data);
std::string base64_decode(std::string_view text);

} // namespace webcorp
