#pragma once

#include "webcorp/warc/record.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::warc {

/// An HTTP response split into status, headers and (de-chunked) body.
struct HttpResponse {
    int status = 0;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;

    [[nodiscard]] std::optional<std::string> header(std::string_view name) const;
};

/// Parses "HTTP/x.y NNN ..." + headers; the body starts after the first blank
/// line. Chunked transfer coding and gzip/deflate content coding are undone.
std::optional<HttpResponse> parse_http_response(std::string_view payload);

/// Strips MIME parameters and lowercases: "Text/HTML; charset=x" -> "text/html".
std::string mime_type(std::string_view content_type);
bool is_html_mime(std::string_view content_type);

struct HtmlCapture {
    std::string url;
    std::string html;  // undecoded bytes
    std::string warc_file;
    std::uint64_t record_offset = 0;
    std::string timestamp;
    std::string content_type;

    bool operator==(const HtmlCapture &) const = default;
};

struct RobotsCapture {
    std::string host;  // lowercased authority
    std::string body;  // UTF-8 (lossy decode flagged)
    std::string timestamp;
    bool lossy = false;

    bool operator==(const RobotsCapture &) const = default;
};

enum class SelectOutcome { kept, not_selected, unparseable_http };

/// Single-record form of select_html_records.
std::optional<HtmlCapture> to_html_capture(const WarcRecord &rec, SelectOutcome &outcome);

struct SelectStats {
    std::size_t kept = 0;
    std::size_t not_selected = 0;
    std::size_t unparseable_http = 0;
};

/// Keeps response/resource records with HTTP status 200 (resource records
/// carry no status and count as 200) and an HTML content type.
std::vector<HtmlCapture> select_html_records(const std::vector<WarcRecord> &records,
                                             SelectStats *stats = nullptr);

/// robots.txt bodies by host; the latest timestamp wins per host.
std::vector<RobotsCapture> capture_robots(const std::vector<WarcRecord> &records);

/// Merges captures into `into`, keeping the latest per host.
void merge_robots(std::map<std::string, RobotsCapture> &into, const RobotsCapture &cap);

/// Single-record probe used by streaming callers.
std::optional<RobotsCapture> to_robots_capture(const WarcRecord &rec);

enum class TrashDecision { keep, drop, drop_unparseable };

/// Known-trash URL list. Each pattern is either a bare host ("spam.example")
/// or a URL prefix ("http://a.example/dir/").
class TrashFilter {
  public:
    TrashFilter() = default;
    explicit TrashFilter(const std::vector<std::string> &patterns);
    static TrashFilter load(const std::string &path);

    [[nodiscard]] TrashDecision decide(std::string_view url) const;
    [[nodiscard]] std::size_t size() const { return hosts_.size() + prefixes_.size(); }

  private:
    std::vector<std::string> hosts_;     // sorted
    std::vector<std::string> prefixes_;  // sorted
};

inline TrashDecision filter_trash_urls(const HtmlCapture &cap, const TrashFilter &filter) {
    return filter.decide(cap.url);
}

} // namespace webcorp::warc
