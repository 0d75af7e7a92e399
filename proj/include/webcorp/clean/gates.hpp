#pragma once

#include "webcorp/extract/document.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace webcorp::clean {

enum class RejectReason { lid_prob, robots, wds, doc_length, seg_length, adult_url };

inline constexpr RejectReason kAllReasons[] = {RejectReason::lid_prob,   RejectReason::robots,
                                               RejectReason::wds,        RejectReason::doc_length,
                                               RejectReason::seg_length, RejectReason::adult_url};

std::string_view reason_name(RejectReason r);
std::optional<RejectReason> parse_reason(std::string_view name);

/// `reason` is set iff the document was rejected.
struct CleanDecision {
    bool kept = true;
    std::optional<RejectReason> reason;

    static CleanDecision keep() { return {}; }
    static CleanDecision reject(RejectReason r) { return {false, r}; }
    bool operator==(const CleanDecision &) const = default;
};

/// Rejection is strict-less for every threshold.
struct Thresholds {
    double lid_prob = 0.5;
    double wds = 5.0;
    std::size_t doc_len = 500;      // Unicode scalar values
    double words_per_seg = 5.0;
    double cjk_chars_per_seg = 10.0;
};

/// Non-empty '\n'-separated segments, their whitespace words and scalar
/// values (newlines excluded).
struct SegmentStats {
    std::size_t segments = 0;
    std::size_t words = 0;
    std::size_t chars = 0;
};
SegmentStats segment_stats(std::string_view text);

/// Language part is jpn, zho or kor; the script is ignored.
bool is_cjk_language(std::string_view code);

CleanDecision lid_gate(double lang_prob, const Thresholds &t = {});
CleanDecision lid_gate(const extract::ExtractedDocument &doc, const Thresholds &t = {});
CleanDecision wds_gate(double score, const Thresholds &t = {});

CleanDecision doc_length_gate(std::string_view text, const Thresholds &t = {});
CleanDecision seg_length_gate(std::string_view text, std::string_view doc_lang, const Thresholds &t = {});

/// doc_length first, then seg_length.
CleanDecision length_gates(const extract::ExtractedDocument &doc, const Thresholds &t = {});

} // namespace webcorp::clean
