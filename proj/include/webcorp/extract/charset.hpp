#pragma once

#include <string>
#include <string_view>

namespace webcorp::extract {

struct DecodedHtml {
    std::string text;     // UTF-8
    std::string charset;  // what was used, lowercased
    bool lossy = false;   // replacement characters were introduced
};

/// Charset precedence: byte-order mark, then <meta charset> / http-equiv
/// declaration, then UTF-8 with U+FFFD for invalid sequences.
DecodedHtml decode_html(std::string_view bytes);

/// Charset named by a <meta> tag in the first few KB, lowercased, or "".
std::string sniff_meta_charset(std::string_view bytes);

} // namespace webcorp::extract
