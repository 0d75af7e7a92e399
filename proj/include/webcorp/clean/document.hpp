#pragma once

#include "webcorp/clean/adult.hpp"
#include "webcorp/clean/exclusion_index.hpp"
#include "webcorp/clean/gates.hpp"
#include "webcorp/clean/pii.hpp"
#include "webcorp/clean/quality.hpp"
#include "webcorp/extract/document.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace webcorp::clean {

/// One line of the monolingual JSONL output.
struct CleanedDocument {
    std::string id;
    std::string document_lang;
    double lang_prob = 0.0;
    std::string text;
    std::string url;
    std::string collection;
    std::string warc_file;
    std::uint64_t warc_offset = 0;
    std::string timestamp;
    std::vector<std::string> seg_langs;
    double doc_score = 0.0;
    std::vector<PiiSpan> pii;
    std::optional<std::string> register_label;  // "register" in JSON

    bool operator==(const CleanedDocument &) const = default;
};

/// Keys in output order: id, document_lang, lang_prob, text, url,
/// collection, warc_file, warc_offset, timestamp, seg_langs, doc_score, pii
/// and, only when set, register.
nlohmann::ordered_json to_json(const CleanedDocument &doc);
/// Throws webcorp::DataError on missing or mistyped fields.
CleanedDocument cleaned_from_json(const nlohmann::json &j);

/// One prediction per '\n'-separated segment, in order. Empty segments get
/// the undetermined label with probability 0.
std::vector<extract::LidPrediction> segment_lid(const extract::ExtractedDocument &doc,
                                                const extract::LanguageIdentifier &classifier);

/// Id, segment LID, quality score and PII spans. The text is copied as is.
CleanedDocument enrich(const extract::ExtractedDocument &doc, const extract::LanguageIdentifier &classifier,
                       const WdsWeights &weights = {});

/// Gates that run after deduplication, each individually switchable.
struct GateSet {
    bool robots = true;
    bool wds = true;
    bool doc_length = true;
    bool seg_length = true;
    bool adult_url = true;
};

struct GateContext {
    const ExclusionIndex *exclusions = nullptr;  // robots gate skipped when null
    const AdultBlocklist *adult = nullptr;       // adult gate skipped when null
    const PublicSuffixList *psl = nullptr;
    Thresholds thresholds;
    GateSet enabled;
};

/// robots -> wds -> doc_length -> seg_length -> adult_url; the first failing
/// gate is the reason.
CleanDecision apply_gates(const CleanedDocument &doc, const GateContext &ctx);

} // namespace webcorp::clean
