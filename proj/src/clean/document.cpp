#include "webcorp/clean/document.hpp"

#include "webcorp/clean/doc_id.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"

namespace webcorp::clean {

nlohmann::ordered_json to_json(const CleanedDocument &doc) {
    nlohmann::ordered_json j;
    j["id"] = doc.id;
    j["document_lang"] = doc.document_lang;
    j["lang_prob"] = doc.lang_prob;
    j["text"] = doc.text;
    j["url"] = doc.url;
    j["collection"] = doc.collection;
    j["warc_file"] = doc.warc_file;
    j["warc_offset"] = doc.warc_offset;
    j["timestamp"] = doc.timestamp;
    j["seg_langs"] = doc.seg_langs;
    j["doc_score"] = doc.doc_score;
    auto pii = nlohmann::ordered_json::array();
    for (const auto &s : doc.pii) pii.push_back({s.start, s.end, pii_kind_name(s.kind)});
    j["pii"] = std::move(pii);
    if (doc.register_label) j["register"] = *doc.register_label;
    return j;
}

CleanedDocument cleaned_from_json(const nlohmann::json &j) {
    try {
        CleanedDocument d;
        d.id = j.at("id").get<std::string>();
        d.document_lang = j.at("document_lang").get<std::string>();
        d.lang_prob = j.at("lang_prob").get<double>();
        d.text = j.at("text").get<std::string>();
        d.url = j.at("url").get<std::string>();
        d.collection = j.at("collection").get<std::string>();
        d.warc_file = j.at("warc_file").get<std::string>();
        d.warc_offset = j.at("warc_offset").get<std::uint64_t>();
        d.timestamp = j.at("timestamp").get<std::string>();
        d.seg_langs = j.at("seg_langs").get<std::vector<std::string>>();
        d.doc_score = j.at("doc_score").get<double>();
        for (const auto &p : j.at("pii")) {
            auto kind = parse_pii_kind(p.at(2).get<std::string>());
            if (!kind) throw DataError("unknown pii kind");
            d.pii.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>(), *kind});
        }
        if (j.contains("register") && !j.at("register").is_null()) d.register_label = j.at("register").get<std::string>();
        return d;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("bad cleaned document: ") + e.what());
    }
}

std::vector<extract::LidPrediction> segment_lid(const extract::ExtractedDocument &doc,
                                                const extract::LanguageIdentifier &classifier) {
    std::vector<extract::LidPrediction> out;
    for (auto seg : split(doc.text, '\n')) {
        if (trim(seg).empty()) {
            out.push_back({std::string(extract::kUndetermined), 0.0});
            continue;
        }
        out.push_back(classifier.predict(seg));
    }
    return out;
}

CleanedDocument enrich(const extract::ExtractedDocument &doc, const extract::LanguageIdentifier &classifier,
                       const WdsWeights &weights) {
    CleanedDocument c;
    c.id = assign_id(doc.warc_file, doc.url, doc.timestamp);
    c.document_lang = doc.lang;
    c.lang_prob = doc.lang_prob;
    c.text = doc.text;
    c.url = doc.url;
    c.collection = doc.collection;
    c.warc_file = doc.warc_file;
    c.warc_offset = doc.record_offset;
    c.timestamp = doc.timestamp;
    for (auto &p : segment_lid(doc, classifier)) c.seg_langs.push_back(std::move(p.lang));
    // The quality surrogate aligns languages with non-empty segments only.
    std::vector<std::string> nonempty_langs;
    auto segs = split(doc.text, '\n');
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!segs[i].empty()) nonempty_langs.push_back(c.seg_langs[i]);
    }
    c.doc_score = score_document(doc, nonempty_langs, weights);
    c.pii = detect_pii(doc.text);
    return c;
}

CleanDecision apply_gates(const CleanedDocument &doc, const GateContext &ctx) {
    const auto &on = ctx.enabled;
    if (on.robots && ctx.exclusions && ctx.exclusions->contains(doc.url))
        return CleanDecision::reject(RejectReason::robots);
    if (on.wds) {
        if (auto d = wds_gate(doc.doc_score, ctx.thresholds); !d.kept) return d;
    }
    if (on.doc_length) {
        if (auto d = doc_length_gate(doc.text, ctx.thresholds); !d.kept) return d;
    }
    if (on.seg_length) {
        if (auto d = seg_length_gate(doc.text, doc.document_lang, ctx.thresholds); !d.kept) return d;
    }
    if (on.adult_url && ctx.adult && ctx.adult->blocked(doc.url, ctx.psl))
        return CleanDecision::reject(RejectReason::adult_url);
    return CleanDecision::keep();
}

} // namespace webcorp::clean
