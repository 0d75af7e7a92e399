#include "warc_writer.hpp"

#include <zlib.h>

#include <cstdio>
#include <stdexcept>

namespace webcorp::testing {

std::string gzip_member(const std::string &data) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_BEST_SPEED, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");
    std::string out(deflateBound(&zs, static_cast<uLong>(data.size())) + 32, '\0');
    zs.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef *>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
    out.resize(zs.total_out);
    return out;
}

std::uint64_t WarcWriter::write(const std::string &type, const std::string &uri, const std::string &date,
                                const std::string &content_type, const std::string &block,
                                const std::vector<std::pair<std::string, std::string>> &extra) {
    char id[64];
    std::snprintf(id, sizeof id, "<urn:uuid:00000000-0000-4000-8000-%012llu>",
                  static_cast<unsigned long long>(++serial_));
    std::string rec = "WARC/1.1\r\n";
    rec += "WARC-Type: " + type + "\r\n";
    rec += std::string("WARC-Record-ID: ") + id + "\r\n";
    rec += "WARC-Date: " + date + "\r\n";
    if (!uri.empty()) rec += "WARC-Target-URI: " + uri + "\r\n";
    for (const auto &[k, v] : extra) rec += k + ": " + v + "\r\n";
    if (!content_type.empty()) rec += "Content-Type: " + content_type + "\r\n";
    rec += "Content-Length: " + std::to_string(block.size()) + "\r\n\r\n";
    rec += block;
    rec += "\r\n\r\n";
    if (codec_ == Codec::gzip) rec = gzip_member(rec);
    auto at = offset_;
    out_.write(rec.data(), static_cast<std::streamsize>(rec.size()));
    offset_ += rec.size();
    return at;
}

std::uint64_t WarcWriter::warcinfo(const std::string &date, const std::string &body) {
    return write("warcinfo", "", date, "application/warc-fields", body);
}

std::uint64_t WarcWriter::request(const std::string &uri, const std::string &date) {
    auto slash = uri.find('/', uri.find("//") + 2);
    auto host = uri.substr(uri.find("//") + 2, slash == std::string::npos ? std::string::npos : slash - uri.find("//") - 2);
    auto path = slash == std::string::npos ? std::string("/") : uri.substr(slash);
    std::string block = "GET " + path + " HTTP/1.1\r\nHost: " + host + "\r\nUser-Agent: CCBot/2.0\r\n\r\n";
    return write("request", uri, date, "application/http; msgtype=request", block);
}

std::uint64_t WarcWriter::response(const std::string &uri, const std::string &date, const std::string &http) {
    return write("response", uri, date, "application/http; msgtype=response", http);
}

std::string http_message(int status, const std::string &content_type, const std::string &body,
                         const std::vector<std::pair<std::string, std::string>> &extra) {
    std::string reason = status == 200 ? "OK" : status == 404 ? "Not Found" : "Status";
    std::string msg = "HTTP/1.1 " + std::to_string(status) + " " + reason + "\r\n";
    msg += "Content-Type: " + content_type + "\r\n";
    for (const auto &[k, v] : extra) msg += k + ": " + v + "\r\n";
    msg += "Content-Length: " + std::to_string(body.size()) + "\r\n\r\n";
    msg += body;
    return msg;
}

} // namespace webcorp::testing
