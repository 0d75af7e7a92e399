#include "robots_cases.hpp"
#include "synthetic_crawl.hpp"
#include "text_gen.hpp"
#include "warc_writer.hpp"

#include <doctest.h>

#include <zlib.h>

#include <filesystem>
#include <set>
#include <sstream>

using namespace webcorp::testing;

namespace {

std::string gunzip(const std::string &data) {
    z_stream zs{};
    REQUIRE(inflateInit2(&zs, 31) == Z_OK);
    zs.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    std::string out;
    char buf[4096];
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = reinterpret_cast<Bytef *>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        REQUIRE((rc == Z_OK || rc == Z_STREAM_END));
        out.append(buf, sizeof buf - zs.avail_out);
    }
    inflateEnd(&zs);
    return out;
}

} // namespace

TEST_SUITE("support") {
    TEST_CASE("gzip member decompresses to its input") {
        const std::string s = "WARC/1.1\r\nsome bytes\r\n\r\n";
        CHECK(gunzip(gzip_member(s)) == s);
        CHECK(gunzip(gzip_member("")) == "");
    }

    TEST_CASE("plain writer output has the WARC framing") {
        std::ostringstream out;
        WarcWriter w(out, WarcWriter::Codec::plain);
        CHECK(w.write("resource", "http://a/", "2024-01-01T00:00:00Z", "text/plain", "abc") == 0);
        auto second = w.offset();
        CHECK(second == out.str().size());
        auto s = out.str();
        CHECK(s.rfind("WARC/1.1\r\n", 0) == 0);
        CHECK(s.find("Content-Length: 3\r\n") != std::string::npos);
        CHECK(s.substr(s.size() - 7) == "abc\r\n\r\n");
        auto body = http_message(200, "text/html", "<p>x</p>");
        CHECK(body.rfind("HTTP/1.1 200 ", 0) == 0);
        CHECK(body.find("Content-Length: 8\r\n") != std::string::npos);
    }

    TEST_CASE("text generator is seeded and stays in its script") {
        TextGen a(1), b(1), c(2);
        CHECK(a.paragraphs("fin", 400) == b.paragraphs("fin", 400));
        CHECK(a.sentence("eng", 8) != c.sentence("eng", 8));
        auto jp = a.sentence("jpn", 5);
        CHECK(jp.find("。") != std::string::npos);
        CHECK(jp.find(' ') == std::string::npos);
        std::size_t total = 0;
        for (const auto &p : a.paragraphs("eng", 600)) total += p.size() + 1;
        CHECK(total >= 600);
    }

    TEST_CASE("robots case table is large and balanced") {
        CHECK(robots_cases().size() >= 20);
        std::set<std::string> names;
        std::size_t allowed = 0;
        for (const auto &c : robots_cases()) {
            names.insert(c.name);
            allowed += c.allowed ? 1 : 0;
        }
        CHECK(names.size() == robots_cases().size());
        CHECK(allowed > 5);
        CHECK(robots_cases().size() - allowed > 5);
    }

    TEST_CASE("synthetic crawl expectations are self-consistent") {
        auto root = (std::filesystem::temp_directory_path() / "webcorp-test-support-crawl").string();
        auto crawl = make_synthetic_crawl(root, 1000, 7);
        for (const auto &[stage, e] : crawl.expected) {
            INFO(stage);
            std::uint64_t rejected = 0;
            for (const auto &[k, v] : e.rejections) rejected += v;
            CHECK(e.in == e.out + rejected);
        }
        std::uint64_t kept = 0;
        for (const auto &[c, n] : crawl.kept_per_collection) kept += n;
        CHECK(kept == crawl.expected.at("clean").out);
        std::uint64_t planted_kept = 0;
        for (const auto &d : crawl.docs) planted_kept += d.fate == "kept";
        CHECK(planted_kept == kept);
        std::filesystem::remove_all(root);
    }
}
