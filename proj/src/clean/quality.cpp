#include "webcorp/clean/quality.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/unicode.hpp"
#include "webcorp/common/utf8.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace webcorp::clean {

namespace {

double penalty(double excess, double weight, double cap) {
    if (excess <= 0.0) return 0.0;
    return std::min(cap, weight * excess);
}

} // namespace

QualityBreakdown quality_breakdown(std::string_view text, std::string_view doc_lang,
                                   const std::vector<std::string> &seg_langs, const WdsWeights &w) {
    QualityBreakdown q;
    std::vector<std::string_view> segs;
    for (auto s : split(text, '\n')) {
        if (!s.empty()) segs.push_back(s);
    }
    if (segs.empty()) {
        q.score = 0.0;
        return q;
    }
    auto n = static_cast<double>(segs.size());

    auto want = extract::language_part(doc_lang);
    std::size_t mismatched = 0;
    for (const auto &l : seg_langs) {
        if (l == extract::kUndetermined) continue;
        if (extract::language_part(l) != want) ++mismatched;
    }
    q.lang_mismatch = penalty(static_cast<double>(mismatched) / n, w.lang_mismatch_weight, w.lang_mismatch_cap);

    std::size_t visible = 0, nonalpha = 0;
    std::vector<double> lengths;
    lengths.reserve(segs.size());
    for (auto s : segs) {
        auto cps = utf8::decode(s);
        lengths.push_back(static_cast<double>(cps.size()));
        for (char32_t c : cps) {
            if (unicode::is_whitespace(c)) continue;
            ++visible;
            if (!unicode::is_letter(c)) ++nonalpha;
        }
    }
    double ratio = visible ? static_cast<double>(nonalpha) / static_cast<double>(visible) : 1.0;
    q.nonalpha = penalty(ratio - w.nonalpha_threshold, w.nonalpha_weight, w.nonalpha_cap);

    std::unordered_set<std::string_view> distinct(segs.begin(), segs.end());
    double dup = (n - static_cast<double>(distinct.size())) / n;
    q.duplicate = penalty(dup, w.duplicate_weight, w.duplicate_cap);

    double mean = 0.0;
    for (double l : lengths) mean += l;
    mean /= n;
    double var = 0.0;
    for (double l : lengths) var += (l - mean) * (l - mean);
    var /= n;
    double cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    q.skew = penalty(cv - w.skew_threshold, w.skew_weight, w.skew_cap);

    q.score = std::clamp(10.0 - q.lang_mismatch - q.nonalpha - q.duplicate - q.skew, 0.0, 10.0);
    return q;
}

double score_document(const extract::ExtractedDocument &doc, const std::vector<std::string> &seg_langs,
                      const WdsWeights &w) {
    return quality_breakdown(doc.text, doc.lang, seg_langs, w).score;
}

} // namespace webcorp::clean
