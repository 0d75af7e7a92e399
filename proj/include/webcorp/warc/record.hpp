#pragma once

#include "webcorp/common/compression.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::warc {

enum class RecordType { warcinfo, request, response, resource, metadata, other };

RecordType parse_record_type(std::string_view s);
std::string_view to_string(RecordType t);

struct WarcRecord {
    RecordType type = RecordType::other;
    std::string target_uri;
    std::string date;          // WARC-Date, ISO-8601 UTC
    std::string content_type;  // WARC-level Content-Type
    std::string payload;       // record block, exactly Content-Length bytes
    std::string source_file;
    std::uint64_t record_offset = 0;

    bool operator==(const WarcRecord &) const = default;
};

struct ParseStats {
    std::size_t records = 0;
    std::size_t skipped = 0;   // malformed records dropped
    bool truncated = false;    // stream ended inside a record
    std::vector<std::string> warnings;
};

/// Streaming reader over a concatenation of WARC/1.0 or WARC/1.1 records.
/// Each record may be stored plain, as its own gzip member, or as its own
/// zstd frame; the codec is detected per record from the magic bytes.
/// Malformed records are skipped and counted. A stream whose first record
/// cannot be recognised at all raises DataError naming `source_file`.
class WarcReader {
  public:
    WarcReader(std::istream &in, std::string source_file);

    std::optional<WarcRecord> next();
    [[nodiscard]] const ParseStats &stats() const { return stats_; }

  private:
    enum class Status { ok, need_more, malformed, truncated };
    struct PlainResult {
        Status status;
        std::size_t consumed = 0;
        WarcRecord record;
    };

    bool fill(std::size_t want);
    void compact();
    std::size_t skip_blank(std::size_t from);
    PlainResult parse_plain(std::string_view avail, bool at_eof) const;
    void decode_member(std::string_view data, std::uint64_t offset);
    void resync(Codec codec);
    void warn(std::string msg);

    std::istream &in_;
    std::string source_;
    std::string buf_;
    std::size_t pos_ = 0;
    std::uint64_t base_ = 0;  // stream offset of buf_[0]
    bool eof_ = false;
    bool started_ = false;
    std::vector<WarcRecord> pending_;
    std::size_t pending_pos_ = 0;
    ParseStats stats_;
};

/// Reads the whole stream.
std::vector<WarcRecord> parse_warc_stream(std::istream &in, const std::string &source_file,
                                          ParseStats *stats = nullptr);

} // namespace webcorp::warc
