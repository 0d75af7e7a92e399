#include "webcorp/common/strings.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/unicode.hpp"
#include "webcorp/common/utf8.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace webcorp {

namespace {

bool ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
}

} // namespace

std::string_view trim(std::string_view s) {
    while (!s.empty() && ascii_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && ascii_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower);
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (lower(a[i]) != lower(b[i])) return false;
    }
    return true;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

bool icontains(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [](char a, char b) { return lower(a) == lower(b); });
    return it != haystack.end();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    std::size_t tok_start = std::string_view::npos;
    while (pos < s.size()) {
        std::size_t start = pos;
        bool space;
        if (static_cast<unsigned char>(s[pos]) < 0x80) {
            space = ascii_space(s[pos]);
            ++pos;
        } else {
            space = unicode::is_whitespace(utf8::decode_one(s, pos));
        }
        if (space) {
            if (tok_start != std::string_view::npos) {
                out.push_back(s.substr(tok_start, start - tok_start));
                tok_start = std::string_view::npos;
            }
        } else if (tok_start == std::string_view::npos) {
            tok_start = start;
        }
    }
    if (tok_start != std::string_view::npos) out.push_back(s.substr(tok_start));
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (auto tok : split_whitespace(s)) {
        if (!out.empty()) out.push_back(' ');
        out.append(tok);
    }
    return out;
}

std::vector<std::string> read_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open list file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view v = line;
        if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
        v = trim(v);
        if (!v.empty()) out.emplace_back(v);
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

} // namespace webcorp
