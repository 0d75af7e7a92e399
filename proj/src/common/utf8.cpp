#include "webcorp/common/utf8.hpp"

namespace webcorp::utf8 {

char32_t decode_one(std::string_view s, std::size_t &pos, bool *invalid) {
    auto fail = [&]() -> char32_t {
        ++pos;
        if (invalid) *invalid = true;
        return kReplacement;
    };
    auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return fail();
    }
    if (pos + len > s.size()) return fail();
    for (int i = 1; i < len; ++i) {
        auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) return fail();
        cp = (cp << 6) | (b & 0x3F);
    }
    // overlong, surrogate and out-of-range checks
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return fail();
    }
    pos += len;
    return cp;
}

std::u32string decode(std::string_view s, bool *lossy) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) out.push_back(decode_one(s, pos, lossy));
    return out;
}

void append(std::string &out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) append(out, cp);
    return out;
}

std::string sanitize(std::string_view s, bool *lossy) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t start = pos;
        bool bad = false;
        char32_t cp = decode_one(s, pos, &bad);
        if (bad) {
            if (lossy) *lossy = true;
            append(out, cp);
        } else {
            out.append(s.substr(start, pos - start));
        }
    }
    return out;
}

bool is_valid(std::string_view s) {
    bool bad = false;
    std::size_t pos = 0;
    while (pos < s.size() && !bad) decode_one(s, pos, &bad);
    return !bad;
}

std::size_t length(std::string_view s) {
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        decode_one(s, pos);
        ++n;
    }
    return n;
}

std::size_t byte_offset(std::string_view s, std::size_t n) {
    std::size_t pos = 0;
    while (n > 0 && pos < s.size()) {
        decode_one(s, pos);
        --n;
    }
    return pos;
}

std::string substr(std::string_view s, std::size_t start, std::size_t count) {
    std::size_t b = byte_offset(s, start);
    std::size_t e = b + byte_offset(s.substr(b), count);
    return std::string(s.substr(b, e - b));
}

std::vector<std::size_t> byte_to_scalar_index(std::string_view s) {
    std::vector<std::size_t> idx(s.size() + 1);
    std::size_t pos = 0;
    std::size_t n = 0;
    while (pos < s.size()) {
        std::size_t start = pos;
        decode_one(s, pos);
        for (std::size_t i = start; i < pos; ++i) idx[i] = n;
        ++n;
    }
    idx[s.size()] = n;
    return idx;
}

} // namespace webcorp::utf8
