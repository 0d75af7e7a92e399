#include "webcorp/extract/extractor.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"
#include "webcorp/extract/charset.hpp"
#include "webcorp/extract/html.hpp"

#include <algorithm>
#include <array>

namespace webcorp::extract {

namespace {

constexpr std::array<std::string_view, 17> kDropElements = {
    "head",  "script", "style", "noscript", "template", "iframe", "svg",    "math",  "canvas",
    "object", "select", "button", "form",    "nav",      "aside",  "footer", "table",
};

constexpr std::array<std::string_view, 31> kBlockElements = {
    "p",       "div",     "section", "article", "main",    "h1",    "h2",   "h3",  "h4",     "h5",   "h6",
    "li",      "ul",      "ol",      "dl",      "dt",      "dd",    "blockquote", "pre", "figcaption",
    "address", "center",  "details", "summary", "body",    "html",  "header", "hr",  "figure", "caption",
    "fieldset",
};

// class/id tokens marking boilerplate regions, including comment sections
constexpr std::array<std::string_view, 24> kBoilerplateTokens = {
    "nav",     "navbar",  "navigation", "menu",   "sidebar", "footer",  "foot",      "breadcrumb",
    "breadcrumbs", "cookie", "cookies", "share",  "sharing", "social",  "related",   "advert",
    "ads",     "banner",  "comment",    "comments", "disqus", "respond", "pagination", "widget",
};

bool contains(auto const &arr, std::string_view v) {
    return std::find(arr.begin(), arr.end(), v) != arr.end();
}

bool boilerplate_attr(const HtmlToken &tok) {
    for (const char *key : {"class", "id"}) {
        const auto *v = tok.attr(key);
        if (!v) continue;
        std::string lower = to_lower_ascii(*v);
        std::size_t i = 0;
        while (i < lower.size()) {
            while (i < lower.size() && !((lower[i] >= 'a' && lower[i] <= 'z') || (lower[i] >= '0' && lower[i] <= '9'))) ++i;
            std::size_t j = i;
            while (j < lower.size() && ((lower[j] >= 'a' && lower[j] <= 'z') || (lower[j] >= '0' && lower[j] <= '9'))) ++j;
            if (j > i && contains(kBoilerplateTokens, std::string_view(lower).substr(i, j - i))) return true;
            i = j;
        }
    }
    if (const auto *role = tok.attr("role")) {
        auto r = to_lower_ascii(trim(*role));
        if (r == "navigation" || r == "banner" || r == "contentinfo" || r == "complementary") return true;
    }
    return false;
}

struct Chunk {
    std::string text;
    std::size_t link_chars = 0;
    std::size_t markup_bytes = 0;
};

class ChunkBuilder {
  public:
    void flush() {
        std::string text = collapse_whitespace(current_.text);
        if (!text.empty()) {
            current_.text = std::move(text);
            chunks_.push_back(std::move(current_));
        }
        current_ = Chunk{};
    }
    void add_markup(std::size_t bytes) { current_.markup_bytes += bytes; }
    void add_text(std::string_view raw, bool in_link) {
        std::string decoded = decode_entities(raw, true);
        current_.markup_bytes += raw.size();
        if (in_link) current_.link_chars += utf8::length(collapse_whitespace(decoded));
        current_.text += decoded;
    }
    std::vector<Chunk> take() {
        flush();
        return std::move(chunks_);
    }

  private:
    Chunk current_;
    std::vector<Chunk> chunks_;
};

} // namespace

std::vector<std::string> DensityExtractor::extract(std::string_view html) const {
    ChunkBuilder builder;
    HtmlTokenizer tz(html);
    HtmlToken tok;

    std::string skip_name;   // element being dropped
    int skip_depth = 0;
    int link_depth = 0;
    int article_depth = 0;
    bool in_pre = false;

    while (tz.next(tok)) {
        using K = HtmlToken::Kind;
        if (skip_depth > 0) {
            if (tok.kind == K::start_tag && tok.name == skip_name && !tok.self_closing) ++skip_depth;
            if (tok.kind == K::end_tag && tok.name == skip_name) --skip_depth;
            continue;
        }
        switch (tok.kind) {
        case K::comment:
        case K::doctype:
            break;
        case K::text:
            if (in_pre) {
                auto lines = split(tok.raw, '\n');
                for (std::size_t i = 0; i < lines.size(); ++i) {
                    if (i > 0) builder.flush();
                    builder.add_text(lines[i], link_depth > 0);
                }
            } else {
                builder.add_text(tok.raw, link_depth > 0);
            }
            break;
        case K::start_tag: {
            bool drop = contains(kDropElements, tok.name) || (tok.name == "header" && article_depth == 0) ||
                        boilerplate_attr(tok);
            if (drop && tok.name != "body" && tok.name != "html") {
                if (!tok.self_closing && !is_void_element(tok.name)) {
                    skip_name = tok.name;
                    skip_depth = 1;
                }
                builder.flush();
                break;
            }
            if (tok.name == "br" || contains(kBlockElements, tok.name)) {
                builder.flush();
            }
            builder.add_markup(tok.raw.size());
            if (tok.name == "a" && !tok.self_closing) ++link_depth;
            if (tok.name == "article" || tok.name == "main") ++article_depth;
            if (tok.name == "pre") in_pre = true;
            break;
        }
        case K::end_tag:
            builder.add_markup(tok.raw.size());
            if (tok.name == "a" && link_depth > 0) --link_depth;
            if ((tok.name == "article" || tok.name == "main") && article_depth > 0) --article_depth;
            if (tok.name == "pre") in_pre = false;
            if (tok.name == "br" || contains(kBlockElements, tok.name)) builder.flush();
            break;
        }
    }

    std::vector<Chunk> chunks = builder.take();
    if (chunks.empty()) return {};

    std::vector<double> weight(chunks.size());
    std::vector<bool> good(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto &c = chunks[i];
        double chars = static_cast<double>(utf8::length(c.text));
        double link_density = chars > 0 ? static_cast<double>(c.link_chars) / chars : 1.0;
        double text_density =
            c.markup_bytes > 0 ? static_cast<double>(c.text.size()) / static_cast<double>(c.markup_bytes) : 0.0;
        good[i] = link_density <= params_.max_link_density && text_density >= params_.min_text_density;
        weight[i] = good[i] ? chars : -(chars + params_.bad_block_cost);
    }

    // Maximum-sum contiguous run (Kadane); ties keep the earliest run.
    double best = 0.0;
    double run = 0.0;
    std::size_t run_start = 0;
    std::size_t best_start = 0;
    std::size_t best_end = 0;  // exclusive
    for (std::size_t i = 0; i < weight.size(); ++i) {
        if (run <= 0.0) {
            run = weight[i];
            run_start = i;
        } else {
            run += weight[i];
        }
        if (run > best) {
            best = run;
            best_start = run_start;
            best_end = i + 1;
        }
    }

    std::vector<std::string> out;
    for (std::size_t i = best_start; i < best_end; ++i) {
        if (good[i]) out.push_back(std::move(chunks[i].text));
    }
    return out;
}

ExtractResult extract_main_text(std::string_view html_bytes, const Extractor &extractor) {
    ExtractResult res;
    DecodedHtml decoded = decode_html(html_bytes);
    res.lossy = decoded.lossy;
    bool has_markup = false;
    {
        HtmlTokenizer tz(decoded.text);
        HtmlToken tok;
        while (tz.next(tok)) {
            if (tok.kind != HtmlToken::Kind::text) {
                has_markup = true;
                break;
            }
        }
    }
    if (!has_markup) {
        res.parse_failed = !decoded.text.empty();
        return res;
    }
    res.segments = extractor.extract(decoded.text);
    return res;
}

ExtractResult extract_main_text(std::string_view html_bytes) {
    static const DensityExtractor baseline;
    return extract_main_text(html_bytes, baseline);
}

std::string join_segments(const std::vector<std::string> &segments) {
    std::string out;
    for (const auto &s : segments) {
        if (!out.empty()) out.push_back('\n');
        out += s;
    }
    return out;
}

} // namespace webcorp::extract
