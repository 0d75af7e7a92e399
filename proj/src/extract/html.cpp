#include "webcorp/extract/html.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace webcorp::extract {

namespace {

bool ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

constexpr std::array<std::string_view, 8> kRawText = {"script", "style", "textarea", "title",
                                                      "noscript", "iframe", "xmp", "plaintext"};

struct Entity {
    std::string_view name;
    char32_t cp;
};

// Common named references; the full HTML5 table is not needed for text extraction.
constexpr Entity kEntities[] = {
    {"amp", '&'},       {"lt", '<'},         {"gt", '>'},         {"quot", '"'},       {"apos", '\''},
    {"nbsp", 0xA0},     {"copy", 0xA9},      {"reg", 0xAE},       {"trade", 0x2122},   {"hellip", 0x2026},
    {"mdash", 0x2014},  {"ndash", 0x2013},   {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"ldquo", 0x201C},
    {"rdquo", 0x201D},  {"laquo", 0xAB},     {"raquo", 0xBB},     {"bull", 0x2022},    {"middot", 0xB7},
    {"euro", 0x20AC},   {"pound", 0xA3},     {"yen", 0xA5},       {"cent", 0xA2},      {"sect", 0xA7},
    {"deg", 0xB0},      {"times", 0xD7},     {"divide", 0xF7},    {"shy", 0xAD},       {"iexcl", 0xA1},
    {"iquest", 0xBF},   {"agrave", 0xE0},    {"aacute", 0xE1},    {"acirc", 0xE2},     {"atilde", 0xE3},
    {"auml", 0xE4},     {"aring", 0xE5},     {"aelig", 0xE6},     {"ccedil", 0xE7},    {"egrave", 0xE8},
    {"eacute", 0xE9},   {"ecirc", 0xEA},     {"euml", 0xEB},      {"igrave", 0xEC},    {"iacute", 0xED},
    {"icirc", 0xEE},    {"iuml", 0xEF},      {"ntilde", 0xF1},    {"ograve", 0xF2},    {"oacute", 0xF3},
    {"ocirc", 0xF4},    {"otilde", 0xF5},    {"ouml", 0xF6},      {"oslash", 0xF8},    {"ugrave", 0xF9},
    {"uacute", 0xFA},   {"ucirc", 0xFB},     {"uuml", 0xFC},      {"yacute", 0xFD},    {"szlig", 0xDF},
    {"Agrave", 0xC0},   {"Aacute", 0xC1},    {"Acirc", 0xC2},     {"Auml", 0xC4},      {"Aring", 0xC5},
    {"Ccedil", 0xC7},   {"Egrave", 0xC8},    {"Eacute", 0xC9},    {"Ecirc", 0xCA},     {"Ntilde", 0xD1},
    {"Oacute", 0xD3},   {"Ouml", 0xD6},      {"Uacute", 0xDA},    {"Uuml", 0xDC},      {"oelig", 0x153},
};

} // namespace

const std::string *HtmlToken::attr(std::string_view key) const {
    for (const auto &[k, v] : attrs) {
        if (k == key) return &v;
    }
    return nullptr;
}

bool is_void_element(std::string_view name) {
    static constexpr std::array<std::string_view, 14> kVoid = {
        "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr"};
    return std::find(kVoid.begin(), kVoid.end(), name) != kVoid.end();
}

std::string decode_entities(std::string_view s, bool keep_lt_before_letter) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c != '&') {
            out.push_back(c);
            ++i;
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(c);
            ++i;
            continue;
        }
        std::string_view ref = s.substr(i + 1, semi - i - 1);
        char32_t cp = 0;
        bool ok = false;
        if (!ref.empty() && ref[0] == '#') {
            std::uint32_t v = 0;
            std::string_view digits = ref.substr(1);
            int base = 10;
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                digits.remove_prefix(1);
                base = 16;
            }
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
            if (ec == std::errc() && p == digits.data() + digits.size() && !digits.empty()) {
                cp = (v == 0 || v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) ? utf8::kReplacement : v;
                ok = true;
            }
        } else {
            for (const auto &e : kEntities) {
                if (e.name == ref) {
                    cp = e.cp;
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) {
            out.push_back(c);
            ++i;
            continue;
        }
        if (cp == '<' && keep_lt_before_letter && semi + 1 < s.size() && ascii_alpha(s[semi + 1])) {
            out.append(s.substr(i, semi - i + 1));
        } else {
            utf8::append(out, cp);
        }
        i = semi + 1;
    }
    return out;
}

bool HtmlTokenizer::next(HtmlToken &tok) {
    tok = HtmlToken{};
    if (pos_ >= src_.size()) return false;

    if (!raw_text_end_.empty()) {
        // Scan for the matching close tag, case-insensitively.
        std::size_t start = pos_;
        std::size_t p = pos_;
        std::string close = "</" + raw_text_end_;
        while (true) {
            p = src_.find("</", p);
            if (p == std::string_view::npos || istarts_with(src_.substr(p), close)) break;
            p += 2;
        }
        raw_text_end_.clear();
        std::size_t end = p == std::string_view::npos ? src_.size() : p;
        pos_ = end;
        if (end > start) {
            tok.kind = HtmlToken::Kind::text;
            tok.raw = src_.substr(start, end - start);
            return true;
        }
        return next(tok);
    }

    if (src_[pos_] == '<' && pos_ + 1 < src_.size()) {
        char n = src_[pos_ + 1];
        if (ascii_alpha(n) || n == '/' || n == '!' || n == '?') {
            if (read_tag(tok)) return true;
        }
    }

    // Text up to the next plausible markup start.
    std::size_t start = pos_;
    std::size_t p = pos_ + 1;
    while (true) {
        p = src_.find('<', p);
        if (p == std::string_view::npos || p + 1 >= src_.size()) {
            p = src_.size();
            break;
        }
        char n = src_[p + 1];
        if (ascii_alpha(n) || n == '/' || n == '!' || n == '?') break;
        ++p;
    }
    pos_ = p;
    tok.kind = HtmlToken::Kind::text;
    tok.raw = src_.substr(start, p - start);
    return true;
}

bool HtmlTokenizer::read_tag(HtmlToken &tok) {
    std::size_t start = pos_;
    std::string_view rest = src_.substr(pos_);
    if (rest.starts_with("<!--")) {
        auto end = src_.find("-->", pos_ + 4);
        pos_ = end == std::string_view::npos ? src_.size() : end + 3;
        tok.kind = HtmlToken::Kind::comment;
        tok.raw = src_.substr(start, pos_ - start);
        return true;
    }
    if (rest.starts_with("<!") || rest.starts_with("<?")) {
        auto end = src_.find('>', pos_ + 2);
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        tok.kind = istarts_with(rest, "<!doctype") ? HtmlToken::Kind::doctype : HtmlToken::Kind::comment;
        tok.raw = src_.substr(start, pos_ - start);
        return true;
    }

    std::size_t p = pos_ + 1;
    bool closing = false;
    if (src_[p] == '/') {
        closing = true;
        ++p;
        if (p >= src_.size() || !ascii_alpha(src_[p])) {
            // "</ " and friends are bogus comments
            auto end = src_.find('>', p);
            pos_ = end == std::string_view::npos ? src_.size() : end + 1;
            tok.kind = HtmlToken::Kind::comment;
            tok.raw = src_.substr(start, pos_ - start);
            return true;
        }
    }
    std::size_t name_start = p;
    while (p < src_.size() && !space(src_[p]) && src_[p] != '>' && src_[p] != '/') ++p;
    tok.name = to_lower_ascii(src_.substr(name_start, p - name_start));
    tok.kind = closing ? HtmlToken::Kind::end_tag : HtmlToken::Kind::start_tag;

    // attributes
    while (p < src_.size()) {
        while (p < src_.size() && (space(src_[p]) || src_[p] == '/')) {
            if (src_[p] == '/' && p + 1 < src_.size() && src_[p + 1] == '>') tok.self_closing = true;
            ++p;
        }
        if (p >= src_.size() || src_[p] == '>') break;
        std::size_t an = p;
        while (p < src_.size() && !space(src_[p]) && src_[p] != '>' && src_[p] != '=' &&
               !(src_[p] == '/' && p + 1 < src_.size() && src_[p + 1] == '>')) {
            ++p;
        }
        std::string aname = to_lower_ascii(src_.substr(an, p - an));
        while (p < src_.size() && space(src_[p])) ++p;
        std::string value;
        if (p < src_.size() && src_[p] == '=') {
            ++p;
            while (p < src_.size() && space(src_[p])) ++p;
            if (p < src_.size() && (src_[p] == '"' || src_[p] == '\'')) {
                char q = src_[p++];
                std::size_t vs = p;
                auto ve = src_.find(q, p);
                if (ve == std::string_view::npos) ve = src_.size();
                value = decode_entities(src_.substr(vs, ve - vs));
                p = std::min(ve + 1, src_.size());
            } else {
                std::size_t vs = p;
                while (p < src_.size() && !space(src_[p]) && src_[p] != '>') ++p;
                value = decode_entities(src_.substr(vs, p - vs));
            }
        }
        if (!aname.empty() && !closing) tok.attrs.emplace_back(std::move(aname), std::move(value));
    }
    pos_ = p < src_.size() ? p + 1 : src_.size();
    tok.raw = src_.substr(start, pos_ - start);
    if (!closing && !tok.self_closing &&
        std::find(kRawText.begin(), kRawText.end(), tok.name) != kRawText.end()) {
        raw_text_end_ = tok.name;
    }
    return true;
}

} // namespace webcorp::extract
