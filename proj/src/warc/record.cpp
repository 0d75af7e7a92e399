#include "webcorp/warc/record.hpp"

#include "webcorp/common/compression.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"

#include <charconv>

namespace webcorp::warc {

namespace {

constexpr std::size_t kChunk = 1 << 16;

bool is_blank(char c) {
    return c == '\r' || c == '\n' || c == ' ' || c == '\t';
}

bool starts_record(std::string_view s) {
    return s.starts_with("WARC/1.0") || s.starts_with("WARC/1.1");
}

std::optional<std::uint64_t> parse_length(std::string_view v) {
    v = trim(v);
    if (v.empty()) return std::nullopt;
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc() || p != v.data() + v.size()) return std::nullopt;
    return n;
}

} // namespace

RecordType parse_record_type(std::string_view s) {
    s = trim(s);
    if (s == "warcinfo") return RecordType::warcinfo;
    if (s == "request") return RecordType::request;
    if (s == "response") return RecordType::response;
    if (s == "resource") return RecordType::resource;
    if (s == "metadata") return RecordType::metadata;
    return RecordType::other;
}

std::string_view to_string(RecordType t) {
    switch (t) {
    case RecordType::warcinfo: return "warcinfo";
    case RecordType::request: return "request";
    case RecordType::response: return "response";
    case RecordType::resource: return "resource";
    case RecordType::metadata: return "metadata";
    case RecordType::other: break;
    }
    return "other";
}

WarcReader::WarcReader(std::istream &in, std::string source_file)
    : in_(in), source_(std::move(source_file)) {}

void WarcReader::warn(std::string msg) {
    stats_.warnings.push_back(source_ + ": " + std::move(msg));
}

void WarcReader::compact() {
    if (pos_ > kChunk && pos_ * 2 > buf_.size()) {
        buf_.erase(0, pos_);
        base_ += pos_;
        pos_ = 0;
    }
}

bool WarcReader::fill(std::size_t want) {
    while (buf_.size() - pos_ < want && !eof_) {
        std::size_t old = buf_.size();
        std::size_t grow = std::max(kChunk, want - (buf_.size() - pos_));
        buf_.resize(old + grow);
        in_.read(buf_.data() + old, static_cast<std::streamsize>(grow));
        buf_.resize(old + static_cast<std::size_t>(in_.gcount()));
        if (in_.gcount() == 0 || !in_) eof_ = true;
    }
    return buf_.size() - pos_ >= want;
}

std::size_t WarcReader::skip_blank(std::size_t from) {
    while (true) {
        while (from < buf_.size() && is_blank(buf_[from])) ++from;
        if (from < buf_.size() || eof_) return from;
        fill(buf_.size() - pos_ + 1);
    }
}

WarcReader::PlainResult WarcReader::parse_plain(std::string_view avail, bool at_eof) const {
    PlainResult res{Status::ok, 0, {}};
    if (avail.size() < 8) {
        res.status = at_eof ? Status::truncated : Status::need_more;
        return res;
    }
    if (!starts_record(avail)) {
        res.status = Status::malformed;
        return res;
    }
    std::size_t hdr_end = avail.find("\r\n\r\n");
    std::size_t sep = 4;
    if (std::size_t lf = avail.find("\n\n"); lf != std::string_view::npos && lf < hdr_end) {
        hdr_end = lf;
        sep = 2;
    }
    if (hdr_end == std::string_view::npos) {
        res.status = at_eof ? Status::truncated : Status::need_more;
        return res;
    }

    WarcRecord &rec = res.record;
    std::optional<std::uint64_t> length;
    bool have_type = false;
    auto lines = split(avail.substr(0, hdr_end), '\n');
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto line = lines[i];
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        auto name = trim(line.substr(0, colon));
        auto value = trim(line.substr(colon + 1));
        if (iequals(name, "Content-Length")) {
            length = parse_length(value);
            if (!length) {
                res.status = Status::malformed;
                return res;
            }
        } else if (iequals(name, "WARC-Type")) {
            rec.type = parse_record_type(value);
            have_type = true;
        } else if (iequals(name, "WARC-Target-URI")) {
            // some writers wrap the URI in angle brackets
            if (value.size() >= 2 && value.front() == '<' && value.back() == '>') {
                value = value.substr(1, value.size() - 2);
            }
            rec.target_uri = value;
        } else if (iequals(name, "WARC-Date")) {
            rec.date = value;
        } else if (iequals(name, "Content-Type")) {
            rec.content_type = value;
        }
    }
    if (!length || !have_type) {
        res.status = Status::malformed;
        return res;
    }

    std::size_t body_start = hdr_end + sep;
    std::size_t body_end = body_start + *length;
    if (avail.size() < body_end + 4 && !at_eof) {
        res.status = Status::need_more;
        return res;
    }
    if (avail.size() < body_end) {
        res.status = Status::truncated;
        return res;
    }
    // The block must be followed by the CRLF CRLF trailer, or by another
    // record / end of data. Anything else means Content-Length lied.
    std::size_t after = body_end;
    std::size_t blanks = 0;
    while (after < avail.size() && blanks < 4 && is_blank(avail[after])) {
        ++after;
        ++blanks;
    }
    bool at_boundary = after == avail.size() || starts_record(avail.substr(after)) ||
                       sniff_codec(avail.substr(after)) != Codec::none || blanks >= 2;
    if (!at_boundary) {
        res.status = Status::malformed;
        return res;
    }
    rec.payload = std::string(avail.substr(body_start, *length));
    res.consumed = after;
    return res;
}

void WarcReader::decode_member(std::string_view data, std::uint64_t offset) {
    std::size_t pos = 0;
    bool first = true;
    while (true) {
        while (pos < data.size() && is_blank(data[pos])) ++pos;
        if (pos >= data.size()) break;
        auto res = parse_plain(data.substr(pos), true);
        if (res.status == Status::ok) {
            res.record.source_file = source_;
            // Records sharing one compressed member share its offset.
            res.record.record_offset = offset;
            pending_.push_back(std::move(res.record));
            pos += res.consumed;
            first = false;
            continue;
        }
        if (res.status == Status::truncated && first) {
            ++stats_.skipped;
            warn("truncated record inside compressed member at offset " + std::to_string(offset));
        } else if (res.status != Status::truncated || first) {
            ++stats_.skipped;
            warn("malformed record in compressed member at offset " + std::to_string(offset));
        }
        break;
    }
}

void WarcReader::resync(Codec codec) {
    // Plain records restart at a "WARC/1.x" line; compressed ones at the
    // next member/frame magic.
    std::size_t from = pos_ + 1;
    while (true) {
        std::string_view view(buf_);
        for (std::size_t i = from; i + 8 <= view.size(); ++i) {
            bool hit = codec == Codec::none
                           ? (view[i] == 'W' && view[i - 1] == '\n' && starts_record(view.substr(i)))
                           : sniff_codec(view.substr(i)) == codec;
            if (hit) {
                pos_ = i;
                return;
            }
        }
        if (eof_) {
            pos_ = buf_.size();
            return;
        }
        from = std::max(from, buf_.size() >= 8 ? buf_.size() - 7 : std::size_t{1});
        fill(buf_.size() - pos_ + kChunk);
    }
}

std::optional<WarcRecord> WarcReader::next() {
    while (true) {
        if (pending_pos_ < pending_.size()) {
            ++stats_.records;
            WarcRecord r = std::move(pending_[pending_pos_++]);
            if (pending_pos_ == pending_.size()) {
                pending_.clear();
                pending_pos_ = 0;
            }
            return r;
        }
        compact();
        pos_ = skip_blank(pos_);
        if (pos_ >= buf_.size()) return std::nullopt;
        fill(8);
        std::string_view head = std::string_view(buf_).substr(pos_);
        Codec codec = sniff_codec(head);

        if (!started_) {
            started_ = true;
            if (codec == Codec::none && !starts_record(head)) {
                throw DataError(source_ + ": not a WARC stream (unrecognised header)");
            }
        }

        std::uint64_t offset = base_ + pos_;
        if (codec != Codec::none) {
            // Grow the window until the member/frame decodes completely.
            std::size_t want = kChunk;
            while (true) {
                fill(want);
                std::string_view avail = std::string_view(buf_).substr(pos_);
                FrameResult fr = codec == Codec::gzip ? decompress_gzip_member(avail)
                                                      : decompress_zstd_frame(avail);
                if (fr.complete) {
                    pos_ += fr.consumed;
                    decode_member(fr.data, offset);
                    break;
                }
                bool wants_input = fr.consumed >= avail.size();
                if (wants_input && !eof_) {
                    want = avail.size() * 2;
                    continue;
                }
                ++stats_.skipped;
                if (wants_input) {
                    stats_.truncated = true;
                    warn("truncated compressed member at offset " + std::to_string(offset));
                    pos_ = buf_.size();
                } else {
                    warn("corrupt compressed member at offset " + std::to_string(offset));
                    resync(codec);
                }
                break;
            }
            continue;
        }

        PlainResult res;
        std::size_t want = kChunk;
        while (true) {
            fill(want);
            res = parse_plain(std::string_view(buf_).substr(pos_), eof_);
            if (res.status != Status::need_more) break;
            want *= 2;
        }
        switch (res.status) {
        case Status::ok:
            res.record.source_file = source_;
            res.record.record_offset = offset;
            pos_ += res.consumed;
            ++stats_.records;
            return std::move(res.record);
        case Status::truncated:
            stats_.truncated = true;
            warn("truncated final record at offset " + std::to_string(offset));
            pos_ = buf_.size();
            return std::nullopt;
        case Status::malformed:
        case Status::need_more:
            ++stats_.skipped;
            warn("malformed record at offset " + std::to_string(offset) + " skipped");
            resync(Codec::none);
            break;
        }
    }
}

std::vector<WarcRecord> parse_warc_stream(std::istream &in, const std::string &source_file, ParseStats *stats) {
    WarcReader reader(in, source_file);
    std::vector<WarcRecord> out;
    while (auto rec = reader.next()) out.push_back(std::move(*rec));
    if (stats) *stats = reader.stats();
    return out;
}

} // namespace webcorp::warc
