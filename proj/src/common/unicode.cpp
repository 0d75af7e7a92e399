#include "webcorp/common/unicode.hpp"

#include "webcorp/common/utf8.hpp"

#include <unicode/uchar.h>

namespace webcorp::unicode {

bool is_punctuation(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_P_MASK) != 0;
}

bool is_letter(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_L_MASK) != 0;
}

bool is_whitespace(char32_t cp) {
    return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

bool is_digit(char32_t cp) {
    return u_isdigit(static_cast<UChar32>(cp)) != 0;
}

char32_t to_lower(char32_t cp) {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto c = static_cast<unsigned char>(s[pos]);
        if (c < 0x80) {
            out.push_back(static_cast<char>((c >= 'A' && c <= 'Z') ? c + 32 : c));
            ++pos;
            continue;
        }
        utf8::append(out, to_lower(utf8::decode_one(s, pos)));
    }
    return out;
}

} // namespace webcorp::unicode
