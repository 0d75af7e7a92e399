#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace webcorp::extract {

/// One lexical HTML item. Tag and attribute names are lowercased; attribute
/// values are entity-decoded. `raw` views the source bytes of the token.
struct HtmlToken {
    enum class Kind { start_tag, end_tag, text, comment, doctype };
    Kind kind = Kind::text;
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    bool self_closing = false;
    std::string_view raw;

    [[nodiscard]] const std::string *attr(std::string_view key) const;
};

/// Lenient HTML tokenizer. Never fails: unterminated constructs run to the
/// end of input. Content of script/style/textarea/title/noscript/iframe/xmp
/// is emitted as a single raw text token.
class HtmlTokenizer {
  public:
    explicit HtmlTokenizer(std::string_view html) : src_(html) {}
    bool next(HtmlToken &tok);

  private:
    bool read_tag(HtmlToken &tok);

    std::string_view src_;
    std::size_t pos_ = 0;
    std::string raw_text_end_;  // pending raw-text element name
};

/// Decodes character references. `keep_lt_before_letter` leaves "&lt;"
/// encoded when it would form "<" + ASCII letter, so extracted text can never
/// look like markup.
std::string decode_entities(std::string_view s, bool keep_lt_before_letter = false);

bool is_void_element(std::string_view name);

} // namespace webcorp::extract
