#include "text_gen.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"
#include "webcorp/extract/charset.hpp"
#include "webcorp/extract/document.hpp"
#include "webcorp/extract/extractor.hpp"
#include "webcorp/extract/html.hpp"
#include "webcorp/extract/lid.hpp"
#include "webcorp/extract/mt_markup.hpp"

#include <doctest.h>

using namespace webcorp;

namespace {

const extract::NgramLid &lid() {
    static const auto model = extract::NgramLid::from_directory(testing::resource_dir() + "/lid");
    return model;
}

std::string seed_text(const std::string &label) {
    auto lines = read_list_file(testing::resource_dir() + "/lid/" + label + ".txt");
    return lines.at(0);
}

} // namespace

TEST_SUITE("extract") {
    TEST_CASE("MT markup detection looks at markup, not text") {
        auto mt = extract::MtDetector::load(testing::resource_dir() + "/mt_indicators.txt");
        CHECK(mt.detect(R"(<html><body><div class="goog-te-banner-frame skiptranslate"></div></body></html>)"));
        CHECK(mt.detect(R"(<font _msthash="123">x</font>)"));
        CHECK_FALSE(mt.detect(""));
        CHECK_FALSE(mt.detect("<p>the class goog-te-banner-frame and _msthash appear only as text</p>"));
        auto custom = extract::MtDetector::parse({"# c", "tag:mt-widget", "id:translator"});
        CHECK(custom.detect("<MT-WIDGET></mt-widget>"));
        CHECK(custom.detect("<div id=\"translator\">"));
        CHECK_FALSE(custom.detect("<div id=\"translator2\">"));
    }

    TEST_CASE("main content: nav and footer removed, article paragraphs kept") {
        auto r = extract::extract_main_text(R"(<html><head><title>T</title></head><body>
<nav><a href="/">Home</a> <a href="/x">Products</a></nav>
<article><p>The first paragraph of the story has enough words to count as content.</p>
<p>A second paragraph follows with more prose about the same topic.</p></article>
<footer>Copyright 2024 Example Corp</footer></body></html>)");
        REQUIRE(r.segments.size() == 2);
        CHECK(r.segments[0] == "The first paragraph of the story has enough words to count as content.");
        CHECK(r.segments[1] == "A second paragraph follows with more prose about the same topic.");
    }

    TEST_CASE("empty body and tables") {
        CHECK(extract::extract_main_text("<html><body></body></html>").segments.empty());
        auto r = extract::extract_main_text(R"(<html><body><article>
<p>Prose before the table with several ordinary words in it.</p>
<table><tr><td>cell alpha</td><td>cell beta</td></tr></table>
<p>Prose after the table with several ordinary words in it.</p></article></body></html>)");
        for (const auto &s : r.segments) CHECK(s.find("cell") == std::string::npos);
        CHECK(r.segments.size() == 2);
    }

    TEST_CASE("segments are trimmed and non-empty") {
        auto r = extract::extract_main_text("<body><p>  spaced   out\ttext  </p><p>   </p><div>x <b>bold</b> y</div></body>");
        for (const auto &s : r.segments) {
            CHECK_FALSE(s.empty());
            CHECK(s.front() != ' ');
            CHECK(s.back() != ' ');
        }
    }

    TEST_CASE("charset declaration is honoured") {
        std::string latin1 = "<html><head><meta charset=\"iso-8859-1\"></head><body><p>caf\xe9 cr\xe8me</p></body></html>";
        auto d = extract::decode_html(latin1);
        CHECK(d.charset == "iso-8859-1");
        CHECK(d.text.find("café crème") != std::string::npos);
        CHECK_FALSE(d.lossy);
        auto bad = extract::decode_html("<p>broken \xff byte</p>");
        CHECK(bad.lossy);
        CHECK(utf8::is_valid(bad.text));
    }

    TEST_CASE("entities are decoded without creating markup") {
        CHECK(extract::decode_entities("a &amp; b &#233; &eacute;") == "a & b é é");
        CHECK(extract::decode_entities("&lt;script&gt;", true) == "&lt;script>");
    }

    TEST_CASE("LID: seed text self-classifies with high confidence") {
        auto p = lid().predict(seed_text("eng_Latn"));
        CHECK(p.lang == "eng_Latn");
        CHECK(p.prob > 0.9);
        for (const auto &label : lid().labels()) {
            auto q = lid().predict(seed_text(label));
            CHECK(q.lang == label);
        }
    }

    TEST_CASE("LID: degenerate and mixed input") {
        auto p = lid().predict("a");
        CHECK(p.prob <= 1.0);
        CHECK(p.prob >= 0.0);
        CHECK(extract::is_lang_code(p.lang));
        auto mixed = lid().predict(seed_text("eng_Latn") + " " + seed_text("fin_Latn"));
        CHECK(mixed.prob < 0.9);
        CHECK_THROWS((void)lid().predict(""));
        auto dist = lid().distribution("some words here");
        double sum = 0;
        for (double v : dist) sum += v;
        CHECK(sum == doctest::Approx(1.0));
    }

    TEST_CASE("language code helpers") {
        CHECK(extract::is_lang_code("fin_Latn"));
        CHECK_FALSE(extract::is_lang_code("fin"));
        CHECK_FALSE(extract::is_lang_code("fi_Latn"));
        CHECK(extract::language_part("zho_Hans") == "zho");
    }

    TEST_CASE("process_capture: outcomes and fields") {
        extract::DensityExtractor ex;
        auto mt = extract::MtDetector::parse({"class:goog-te-gadget"});
        extract::ExtractContext ctx{&mt, &ex, &lid()};
        warc::HtmlCapture cap;
        cap.url = "http://x.example/a";
        cap.warc_file = "f.warc";
        cap.record_offset = 7;
        cap.timestamp = "2024-01-01T00:00:00Z";
        cap.html = "<html><body><article><p>" + seed_text("fra_Latn") + "</p></article></body></html>";
        extract::ExtractOutcome o{};
        auto d = extract::process_capture(cap, "c1", ctx, o);
        REQUIRE(d);
        CHECK(o == extract::ExtractOutcome::kept);
        CHECK(d->lang == "fra_Latn");
        CHECK(d->collection == "c1");
        CHECK(d->record_offset == 7);
        CHECK(d->text == seed_text("fra_Latn"));
        CHECK(extract::document_from_json(extract::to_json(*d)) == *d);

        cap.html = "<html><body><div class=\"goog-te-gadget\"></div><p>" + seed_text("fra_Latn") + "</p></body></html>";
        CHECK_FALSE(extract::process_capture(cap, "c1", ctx, o));
        CHECK(o == extract::ExtractOutcome::mt_markup);
        cap.html = "<html><body><nav><a href='/'>x</a></nav></body></html>";
        CHECK_FALSE(extract::process_capture(cap, "c1", ctx, o));
        CHECK(o == extract::ExtractOutcome::empty_text);
    }
}
