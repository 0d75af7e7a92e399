#include "webcorp/warc/capture.hpp"

#include "webcorp/common/compression.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/url.hpp"
#include "webcorp/common/utf8.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>

namespace webcorp::warc {

namespace {

std::optional<std::string> dechunk(std::string_view body) {
    std::string out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto eol = body.find('\n', pos);
        if (eol == std::string_view::npos) return std::nullopt;
        auto line = trim(body.substr(pos, eol - pos));
        if (auto semi = line.find(';'); semi != std::string_view::npos) line = trim(line.substr(0, semi));
        std::size_t size = 0;
        auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), size, 16);
        if (ec != std::errc() || p != line.data() + line.size()) return std::nullopt;
        pos = eol + 1;
        if (size == 0) break;
        if (pos + size > body.size()) {
            out.append(body.substr(pos));  // tolerate a truncated last chunk
            break;
        }
        out.append(body.substr(pos, size));
        pos += size;
        if (pos < body.size() && body[pos] == '\r') ++pos;
        if (pos < body.size() && body[pos] == '\n') ++pos;
    }
    return out;
}

std::optional<std::string> inflate_any(std::string_view in, bool raw_deflate) {
    z_stream z{};
    if (inflateInit2(&z, raw_deflate ? -MAX_WBITS : 32 + MAX_WBITS) != Z_OK) return std::nullopt;
    z.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(in.data()));
    z.avail_in = static_cast<uInt>(in.size());
    std::string out;
    char buf[1 << 15];
    int ret;
    do {
        z.next_out = reinterpret_cast<Bytef *>(buf);
        z.avail_out = sizeof buf;
        ret = inflate(&z, Z_NO_FLUSH);
        out.append(buf, sizeof buf - z.avail_out);
    } while (ret == Z_OK);
    inflateEnd(&z);
    if (ret != Z_STREAM_END && out.empty()) return std::nullopt;
    return out;
}

int http_status(const WarcRecord &rec, std::optional<HttpResponse> &resp) {
    if (rec.type == RecordType::resource) return 200;
    resp = parse_http_response(rec.payload);
    return resp ? resp->status : -1;
}

} // namespace

std::optional<std::string> HttpResponse::header(std::string_view name) const {
    for (const auto &[k, v] : headers) {
        if (iequals(k, name)) return v;
    }
    return std::nullopt;
}

std::optional<HttpResponse> parse_http_response(std::string_view payload) {
    auto eol = payload.find('\n');
    if (eol == std::string_view::npos) return std::nullopt;
    auto status_line = trim(payload.substr(0, eol));
    if (!status_line.starts_with("HTTP/")) return std::nullopt;
    auto sp = status_line.find(' ');
    if (sp == std::string_view::npos) return std::nullopt;
    auto code = trim(status_line.substr(sp + 1)).substr(0, 3);
    HttpResponse resp;
    auto [p, ec] = std::from_chars(code.data(), code.data() + code.size(), resp.status);
    if (ec != std::errc() || code.size() != 3) return std::nullopt;

    std::size_t pos = eol + 1;
    std::size_t body_start = payload.size();
    while (pos < payload.size()) {
        auto next = payload.find('\n', pos);
        if (next == std::string_view::npos) next = payload.size();
        auto line = payload.substr(pos, next - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = std::min(next + 1, payload.size());
        if (line.empty()) {
            body_start = pos;
            break;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        resp.headers.emplace_back(std::string(trim(line.substr(0, colon))), std::string(trim(line.substr(colon + 1))));
    }
    std::string body(payload.substr(std::min(body_start, payload.size())));
    if (auto te = resp.header("Transfer-Encoding"); te && icontains(*te, "chunked")) {
        if (auto d = dechunk(body)) body = std::move(*d);
    }
    if (auto ce = resp.header("Content-Encoding")) {
        auto enc = to_lower_ascii(trim(*ce));
        if (enc == "gzip" || enc == "x-gzip") {
            if (auto d = inflate_any(body, false)) body = std::move(*d);
        } else if (enc == "deflate") {
            if (auto d = inflate_any(body, false)) {
                body = std::move(*d);
            } else if (auto r = inflate_any(body, true)) {
                body = std::move(*r);
            }
        }
    }
    resp.body = std::move(body);
    return resp;
}

std::string mime_type(std::string_view content_type) {
    if (auto semi = content_type.find(';'); semi != std::string_view::npos) content_type = content_type.substr(0, semi);
    return to_lower_ascii(trim(content_type));
}

bool is_html_mime(std::string_view content_type) {
    auto m = mime_type(content_type);
    return m == "text/html" || m == "application/xhtml+xml";
}

std::optional<HtmlCapture> to_html_capture(const WarcRecord &rec, SelectOutcome &outcome) {
    outcome = SelectOutcome::not_selected;
    if (rec.type != RecordType::response && rec.type != RecordType::resource) return std::nullopt;
    HtmlCapture cap;
    if (rec.type == RecordType::resource) {
        if (!is_html_mime(rec.content_type)) return std::nullopt;
        cap.content_type = rec.content_type;
        cap.html = rec.payload;
    } else {
        auto resp = parse_http_response(rec.payload);
        if (!resp) {
            outcome = SelectOutcome::unparseable_http;
            return std::nullopt;
        }
        if (resp->status != 200) return std::nullopt;
        auto ct = resp->header("Content-Type");
        if (!ct || !is_html_mime(*ct)) return std::nullopt;
        cap.content_type = *ct;
        cap.html = std::move(resp->body);
    }
    cap.url = rec.target_uri;
    cap.warc_file = rec.source_file;
    cap.record_offset = rec.record_offset;
    cap.timestamp = rec.date;
    outcome = SelectOutcome::kept;
    return cap;
}

std::vector<HtmlCapture> select_html_records(const std::vector<WarcRecord> &records, SelectStats *stats) {
    std::vector<HtmlCapture> out;
    SelectStats local;
    for (const auto &rec : records) {
        SelectOutcome outcome;
        auto cap = to_html_capture(rec, outcome);
        switch (outcome) {
        case SelectOutcome::kept: ++local.kept; break;
        case SelectOutcome::not_selected: ++local.not_selected; break;
        case SelectOutcome::unparseable_http: ++local.unparseable_http; break;
        }
        if (cap) out.push_back(std::move(*cap));
    }
    if (stats) *stats = local;
    return out;
}

std::optional<RobotsCapture> to_robots_capture(const WarcRecord &rec) {
    if (rec.type != RecordType::response && rec.type != RecordType::resource) return std::nullopt;
    auto url = parse_url(rec.target_uri);
    if (!url || url->path != "/robots.txt") return std::nullopt;
    std::optional<HttpResponse> resp;
    if (http_status(rec, resp) != 200) return std::nullopt;
    RobotsCapture cap;
    cap.host = url->authority();
    cap.timestamp = rec.date;
    std::string_view body = resp ? std::string_view(resp->body) : std::string_view(rec.payload);
    cap.body = utf8::sanitize(body, &cap.lossy);
    return cap;
}

void merge_robots(std::map<std::string, RobotsCapture> &into, const RobotsCapture &cap) {
    auto it = into.find(cap.host);
    if (it == into.end()) {
        into.emplace(cap.host, cap);
    } else if (cap.timestamp > it->second.timestamp ||
               (cap.timestamp == it->second.timestamp && cap.body > it->second.body)) {
        // equal timestamps: pick deterministically so input order never matters
        it->second = cap;
    }
}

std::vector<RobotsCapture> capture_robots(const std::vector<WarcRecord> &records) {
    std::map<std::string, RobotsCapture> by_host;
    for (const auto &rec : records) {
        if (auto cap = to_robots_capture(rec)) merge_robots(by_host, *cap);
    }
    std::vector<RobotsCapture> out;
    out.reserve(by_host.size());
    for (auto &[_, cap] : by_host) out.push_back(std::move(cap));
    return out;
}

TrashFilter::TrashFilter(const std::vector<std::string> &patterns) {
    for (const auto &p : patterns) {
        if (p.find('/') != std::string::npos) {
            prefixes_.push_back(p);
        } else {
            hosts_.push_back(to_lower_ascii(p));
        }
    }
    std::sort(hosts_.begin(), hosts_.end());
    std::sort(prefixes_.begin(), prefixes_.end());
}

TrashFilter TrashFilter::load(const std::string &path) {
    return TrashFilter(read_list_file(path));
}

TrashDecision TrashFilter::decide(std::string_view url) const {
    auto parsed = parse_url(url);
    if (!parsed) return TrashDecision::drop_unparseable;
    if (std::binary_search(hosts_.begin(), hosts_.end(), parsed->host)) return TrashDecision::drop;
    for (const auto &p : prefixes_) {
        if (url.starts_with(p)) return TrashDecision::drop;
    }
    return TrashDecision::keep;
}

} // namespace webcorp::warc
