#include "webcorp/extract/charset.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"
#include "webcorp/extract/html.hpp"

#include <unicode/ucnv.h>
#include <unicode/ucnv_cb.h>
#include <unicode/ustring.h>

#include <memory>
#include <vector>

namespace webcorp::extract {

namespace {

constexpr std::size_t kSniffWindow = 4096;

void flag_substitute(const void *context, UConverterToUnicodeArgs *args, const char *codeUnits, int32_t length,
                     UConverterCallbackReason reason, UErrorCode *err) {
    if (reason <= UCNV_IRREGULAR) *static_cast<bool *>(const_cast<void *>(context)) = true;
    UCNV_TO_U_CALLBACK_SUBSTITUTE(nullptr, args, codeUnits, length, reason, err);
}

// Converts with ICU; returns false when the charset is unknown to ICU.
bool convert(std::string_view bytes, const std::string &charset, DecodedHtml &out) {
    UErrorCode err = U_ZERO_ERROR;
    std::unique_ptr<UConverter, decltype(&ucnv_close)> conv(ucnv_open(charset.c_str(), &err), ucnv_close);
    if (U_FAILURE(err) || !conv) return false;
    bool lossy = false;
    err = U_ZERO_ERROR;
    ucnv_setToUCallBack(conv.get(), flag_substitute, &lossy, nullptr, nullptr, &err);
    if (U_FAILURE(err)) return false;

    std::vector<UChar> utf16(bytes.size() * 2 + 16);
    err = U_ZERO_ERROR;
    int32_t n = ucnv_toUChars(conv.get(), utf16.data(), static_cast<int32_t>(utf16.size()), bytes.data(),
                              static_cast<int32_t>(bytes.size()), &err);
    if (err == U_BUFFER_OVERFLOW_ERROR) {
        utf16.resize(static_cast<std::size_t>(n) + 1);
        err = U_ZERO_ERROR;
        ucnv_resetToUnicode(conv.get());
        n = ucnv_toUChars(conv.get(), utf16.data(), static_cast<int32_t>(utf16.size()), bytes.data(),
                          static_cast<int32_t>(bytes.size()), &err);
    }
    if (U_FAILURE(err) && err != U_STRING_NOT_TERMINATED_WARNING) return false;

    std::string utf8_out(static_cast<std::size_t>(n) * 3 + 4, '\0');
    int32_t len = 0;
    err = U_ZERO_ERROR;
    u_strToUTF8WithSub(utf8_out.data(), static_cast<int32_t>(utf8_out.size()), &len, utf16.data(), n, 0xFFFD,
                       nullptr, &err);
    if (U_FAILURE(err) && err != U_STRING_NOT_TERMINATED_WARNING) return false;
    utf8_out.resize(static_cast<std::size_t>(len));
    out.text = std::move(utf8_out);
    out.lossy = lossy;
    return true;
}

std::string charset_from_content(std::string_view content) {
    auto lower = to_lower_ascii(content);
    auto p = lower.find("charset");
    if (p == std::string::npos) return {};
    p = lower.find('=', p);
    if (p == std::string::npos) return {};
    std::string_view v = trim(std::string_view(lower).substr(p + 1));
    if (!v.empty() && (v.front() == '"' || v.front() == '\'')) v.remove_prefix(1);
    auto end = v.find_first_of(" ;\"'");
    return std::string(trim(v.substr(0, end)));
}

bool is_utf8_name(std::string_view cs) {
    return cs == "utf-8" || cs == "utf8";
}

} // namespace

std::string sniff_meta_charset(std::string_view bytes) {
    HtmlTokenizer tz(bytes.substr(0, kSniffWindow));
    HtmlToken tok;
    while (tz.next(tok)) {
        if (tok.kind != HtmlToken::Kind::start_tag || tok.name != "meta") continue;
        if (const auto *cs = tok.attr("charset")) return to_lower_ascii(trim(*cs));
        const auto *equiv = tok.attr("http-equiv");
        const auto *content = tok.attr("content");
        if (equiv && content && iequals(trim(*equiv), "content-type")) {
            auto cs = charset_from_content(*content);
            if (!cs.empty()) return cs;
        }
    }
    return {};
}

DecodedHtml decode_html(std::string_view bytes) {
    DecodedHtml out;
    auto b = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
    if (bytes.size() >= 3 && b(0) == 0xEF && b(1) == 0xBB && b(2) == 0xBF) {
        out.charset = "utf-8";
        out.text = utf8::sanitize(bytes.substr(3), &out.lossy);
        return out;
    }
    if (bytes.size() >= 2 && ((b(0) == 0xFF && b(1) == 0xFE) || (b(0) == 0xFE && b(1) == 0xFF))) {
        out.charset = b(0) == 0xFF ? "utf-16le" : "utf-16be";
        if (convert(bytes.substr(2), out.charset, out)) return out;
    }
    std::string meta = sniff_meta_charset(bytes);
    if (!meta.empty() && !is_utf8_name(meta)) {
        if (convert(bytes, meta, out)) {
            out.charset = meta;
            return out;
        }
    }
    out.charset = "utf-8";
    out.text = utf8::sanitize(bytes, &out.lossy);
    return out;
}

} // namespace webcorp::extract
