#pragma once

#include "webcorp/extract/document.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace webcorp::clean {

/// Weights of the document-quality surrogate. Each penalty is
/// min(cap, weight * excess) and the score is 10 minus their sum, clamped
/// to [0, 10].
struct WdsWeights {
    // (i) fraction of segments whose language differs from the document's
    double lang_mismatch_weight = 5.0;
    double lang_mismatch_cap = 5.0;
    // (ii) share of non-whitespace scalars that are not letters, above a floor
    double nonalpha_threshold = 0.25;
    double nonalpha_weight = 10.0;
    double nonalpha_cap = 4.0;
    // (iii) fraction of segments repeating an earlier segment verbatim
    double duplicate_weight = 8.0;
    double duplicate_cap = 8.0;
    // (iv) coefficient of variation of segment lengths, above a floor
    double skew_threshold = 2.0;
    double skew_weight = 1.0;
    double skew_cap = 2.0;
};

struct QualityBreakdown {
    double lang_mismatch = 0.0;
    double nonalpha = 0.0;
    double duplicate = 0.0;
    double skew = 0.0;
    double score = 10.0;
};

/// `seg_langs` aligns with the non-empty segments of `text`; undetermined
/// segments never count as mismatches.
QualityBreakdown quality_breakdown(std::string_view text, std::string_view doc_lang,
                                   const std::vector<std::string> &seg_langs, const WdsWeights &w = {});

double score_document(const extract::ExtractedDocument &doc, const std::vector<std::string> &seg_langs,
                      const WdsWeights &w = {});

} // namespace webcorp::clean
