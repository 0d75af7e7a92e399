#pragma once

#include "webcorp/extract/extractor.hpp"
#include "webcorp/extract/lid.hpp"
#include "webcorp/extract/mt_markup.hpp"
#include "webcorp/warc/capture.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace webcorp::extract {

struct ExtractedDocument {
    std::string url;
    std::string text;  // segments joined by '\n'
    std::string lang;
    double lang_prob = 0.0;
    std::string warc_file;
    std::uint64_t record_offset = 0;
    std::string timestamp;
    std::string collection;
    bool lossy = false;  // charset decoding replaced bytes

    bool operator==(const ExtractedDocument &) const = default;
};

nlohmann::ordered_json to_json(const ExtractedDocument &doc);
ExtractedDocument document_from_json(const nlohmann::json &j);

enum class ExtractOutcome { kept, mt_markup, empty_text };

struct ExtractContext {
    const MtDetector *mt = nullptr;  // optional
    const Extractor *extractor = nullptr;
    const LanguageIdentifier *lid = nullptr;
};

/// MT-markup check, main-text extraction and document LID for one capture.
std::optional<ExtractedDocument> process_capture(const warc::HtmlCapture &cap, const std::string &collection,
                                                 const ExtractContext &ctx, ExtractOutcome &outcome);

} // namespace webcorp::extract

namespace webcorp::warc {

nlohmann::ordered_json to_json(const HtmlCapture &cap);
HtmlCapture capture_from_json(const nlohmann::json &j);
nlohmann::ordered_json to_json(const RobotsCapture &cap);
RobotsCapture robots_from_json(const nlohmann::json &j);

} // namespace webcorp::warc
