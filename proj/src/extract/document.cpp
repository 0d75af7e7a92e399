#include "webcorp/extract/document.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/hash.hpp"

namespace webcorp::extract {

nlohmann::ordered_json to_json(const ExtractedDocument &doc) {
    nlohmann::ordered_json j;
    j["url"] = doc.url;
    j["text"] = doc.text;
    j["lang"] = doc.lang;
    j["lang_prob"] = doc.lang_prob;
    j["warc_file"] = doc.warc_file;
    j["warc_offset"] = doc.record_offset;
    j["timestamp"] = doc.timestamp;
    j["collection"] = doc.collection;
    if (doc.lossy) j["lossy"] = true;
    return j;
}

ExtractedDocument document_from_json(const nlohmann::json &j) {
    try {
        ExtractedDocument doc;
        doc.url = j.at("url").get<std::string>();
        doc.text = j.at("text").get<std::string>();
        doc.lang = j.at("lang").get<std::string>();
        doc.lang_prob = j.at("lang_prob").get<double>();
        doc.warc_file = j.at("warc_file").get<std::string>();
        doc.record_offset = j.at("warc_offset").get<std::uint64_t>();
        doc.timestamp = j.at("timestamp").get<std::string>();
        doc.collection = j.value("collection", std::string{});
        doc.lossy = j.value("lossy", false);
        return doc;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("bad document record: ") + e.what());
    }
}

std::optional<ExtractedDocument> process_capture(const warc::HtmlCapture &cap, const std::string &collection,
                                                 const ExtractContext &ctx, ExtractOutcome &outcome) {
    if (ctx.mt && ctx.mt->detect(cap.html)) {
        outcome = ExtractOutcome::mt_markup;
        return std::nullopt;
    }
    auto res = ctx.extractor ? extract_main_text(cap.html, *ctx.extractor) : extract_main_text(cap.html);
    if (res.segments.empty()) {
        outcome = ExtractOutcome::empty_text;
        return std::nullopt;
    }
    ExtractedDocument doc;
    doc.url = cap.url;
    doc.text = join_segments(res.segments);
    auto pred = ctx.lid->predict(doc.text);
    doc.lang = pred.lang;
    doc.lang_prob = pred.prob;
    doc.warc_file = cap.warc_file;
    doc.record_offset = cap.record_offset;
    doc.timestamp = cap.timestamp;
    doc.collection = collection;
    doc.lossy = res.lossy;
    outcome = ExtractOutcome::kept;
    return doc;
}

} // namespace webcorp::extract

namespace webcorp::warc {

nlohmann::ordered_json to_json(const HtmlCapture &cap) {
    nlohmann::ordered_json j;
    j["url"] = cap.url;
    j["warc_file"] = cap.warc_file;
    j["warc_offset"] = cap.record_offset;
    j["timestamp"] = cap.timestamp;
    j["content_type"] = cap.content_type;
    j["html_b64"] = base64_encode(cap.html);
    return j;
}

HtmlCapture capture_from_json(const nlohmann::json &j) {
    try {
        HtmlCapture cap;
        cap.url = j.at("url").get<std::string>();
        cap.warc_file = j.at("warc_file").get<std::string>();
        cap.record_offset = j.at("warc_offset").get<std::uint64_t>();
        cap.timestamp = j.at("timestamp").get<std::string>();
        cap.content_type = j.value("content_type", std::string{});
        cap.html = base64_decode(j.at("html_b64").get<std::string>());
        return cap;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("bad capture record: ") + e.what());
    }
}

nlohmann::ordered_json to_json(const RobotsCapture &cap) {
    nlohmann::ordered_json j;
    j["host"] = cap.host;
    j["timestamp"] = cap.timestamp;
    j["body"] = cap.body;
    if (cap.lossy) j["lossy"] = true;
    return j;
}

RobotsCapture robots_from_json(const nlohmann::json &j) {
    try {
        RobotsCapture cap;
        cap.host = j.at("host").get<std::string>();
        cap.timestamp = j.at("timestamp").get<std::string>();
        cap.body = j.at("body").get<std::string>();
        cap.lossy = j.value("lossy", false);
        return cap;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("bad robots record: ") + e.what());
    }
}

} // namespace webcorp::warc
