#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace webcorp {

enum class Codec { none, gzip, zstd };

/// Identifies a compressed frame by its magic bytes (gzip 1f 8b, zstd 28 b5 2f fd).
Codec sniff_codec(std::string_view head);

/// Result of decoding exactly one gzip member / zstd frame.
struct FrameResult {
    std::string data;
    std::size_t consumed = 0;  // compressed bytes used
    bool complete = false;     // false when input ended mid-frame
};

FrameResult decompress_gzip_member(std::string_view in);
FrameResult decompress_zstd_frame(std::string_view in);

/// Whole-buffer helpers (all concatenated members/frames).
std::string gzip_decompress(std::string_view in);
std::string gzip_compress(std::string_view in);
std::string zstd_compress(std::string_view in, int level = 3);
std::string zstd_decompress(std::string_view in);

} // namespace webcorp
