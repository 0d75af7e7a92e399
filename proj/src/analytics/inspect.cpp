#include "webcorp/analytics/inspect.hpp"

#include "webcorp/common/utf8.hpp"

#include <algorithm>
#include <sstream>

namespace webcorp::analytics {

std::string display_text(std::string_view text) {
    auto len = utf8::length(text);
    if (len <= 2 * kDisplayHalf) return std::string(text);
    std::string out = utf8::substr(text, 0, kDisplayHalf);
    out += kDisplaySeparator;
    out += utf8::substr(text, len / 2, kDisplayHalf);
    return out;
}

SeededSampler::SeededSampler(std::uint64_t seed) : rng_(seed) {}

std::uint64_t SeededSampler::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Reject the low 2^64 mod bound values so every residue is equally likely.
    const std::uint64_t floor = (0 - bound) % bound;
    while (true) {
        std::uint64_t x = rng_();
        if (x >= floor) return x % bound;
    }
}

InspectionSample inspection_sample(std::vector<InspectionDoc> docs, const std::map<std::string, std::string> &strata,
                                   std::size_t per_stratum, std::uint64_t seed, const std::string &language) {
    std::sort(docs.begin(), docs.end(), [](const InspectionDoc &a, const InspectionDoc &b) { return a.id < b.id; });
    std::map<std::string, std::vector<const InspectionDoc *>> groups;
    for (const auto &d : docs) {
        auto it = strata.find(d.collection);
        groups[it == strata.end() ? d.collection : it->second].push_back(&d);
    }
    InspectionSample s;
    s.language = language;
    SeededSampler rng(seed);
    for (auto &[stratum, members] : groups) {
        std::size_t take = per_stratum;
        if (members.size() < per_stratum) {
            s.warnings.push_back("stratum '" + stratum + "' has " + std::to_string(members.size()) +
                                 " documents, fewer than " + std::to_string(per_stratum) + "; taking all");
            take = members.size();
        }
        // partial Fisher-Yates: the first `take` slots are the sample
        for (std::size_t i = 0; i < take; ++i) {
            auto j = i + static_cast<std::size_t>(rng.below(members.size() - i));
            std::swap(members[i], members[j]);
            const auto &d = *members[i];
            s.entries.push_back({stratum, d.id, d.lang, display_text(d.text)});
        }
    }
    return s;
}

namespace {

std::string tsv_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\\': out += "\\\\"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::string inspection_sheet(const InspectionSample &sample) {
    std::ostringstream out;
    out << "doc_id\tdisplay_text\tlid_ok\tunnatural\tporn\n";
    for (const auto &e : sample.entries) out << e.doc_id << '\t' << tsv_escape(e.display_text) << "\t\t\t\n";
    return out.str();
}

} // namespace webcorp::analytics
