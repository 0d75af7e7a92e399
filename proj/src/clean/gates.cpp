#include "webcorp/clean/gates.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"

namespace webcorp::clean {

std::string_view reason_name(RejectReason r) {
    switch (r) {
    case RejectReason::lid_prob: return "lid_prob";
    case RejectReason::robots: return "robots";
    case RejectReason::wds: return "wds";
    case RejectReason::doc_length: return "doc_length";
    case RejectReason::seg_length: return "seg_length";
    case RejectReason::adult_url: return "adult_url";
    }
    return "unknown";
}

std::optional<RejectReason> parse_reason(std::string_view name) {
    for (auto r : kAllReasons) {
        if (reason_name(r) == name) return r;
    }
    return std::nullopt;
}

SegmentStats segment_stats(std::string_view text) {
    SegmentStats st;
    for (auto seg : split(text, '\n')) {
        if (seg.empty()) continue;
        ++st.segments;
        st.words += split_whitespace(seg).size();
        st.chars += utf8::length(seg);
    }
    return st;
}

bool is_cjk_language(std::string_view code) {
    auto lang = extract::language_part(code);
    return lang == "jpn" || lang == "zho" || lang == "kor";
}

CleanDecision lid_gate(double lang_prob, const Thresholds &t) {
    return lang_prob < t.lid_prob ? CleanDecision::reject(RejectReason::lid_prob) : CleanDecision::keep();
}

CleanDecision lid_gate(const extract::ExtractedDocument &doc, const Thresholds &t) {
    return lid_gate(doc.lang_prob, t);
}

CleanDecision wds_gate(double score, const Thresholds &t) {
    return score < t.wds ? CleanDecision::reject(RejectReason::wds) : CleanDecision::keep();
}

CleanDecision doc_length_gate(std::string_view text, const Thresholds &t) {
    return utf8::length(text) < t.doc_len ? CleanDecision::reject(RejectReason::doc_length) : CleanDecision::keep();
}

CleanDecision seg_length_gate(std::string_view text, std::string_view doc_lang, const Thresholds &t) {
    auto st = segment_stats(text);
    if (st.segments == 0) return CleanDecision::reject(RejectReason::seg_length);
    // mean < threshold, compared as total < threshold * n to avoid a division
    auto n = static_cast<double>(st.segments);
    bool short_segs = is_cjk_language(doc_lang) ? static_cast<double>(st.chars) < t.cjk_chars_per_seg * n
                                                 : static_cast<double>(st.words) < t.words_per_seg * n;
    return short_segs ? CleanDecision::reject(RejectReason::seg_length) : CleanDecision::keep();
}

CleanDecision length_gates(const extract::ExtractedDocument &doc, const Thresholds &t) {
    if (auto d = doc_length_gate(doc.text, t); !d.kept) return d;
    return seg_length_gate(doc.text, doc.lang, t);
}

} // namespace webcorp::clean
