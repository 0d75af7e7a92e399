#include "webcorp/pipeline/report.hpp"

#include "webcorp/common/error.hpp"

namespace webcorp::pipeline {

std::uint64_t StageReport::rejected() const {
    std::uint64_t n = 0;
    for (const auto &[_, c] : rejections) n += c;
    return n;
}

const StageReport *RunReport::stage(const std::string &name) const {
    for (const auto &s : stages) {
        if (s.stage == name) return &s;
    }
    return nullptr;
}

std::map<std::string, std::uint64_t> RunReport::rejections() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto &s : stages) {
        for (const auto &[reason, n] : s.rejections) out[reason] += n;
    }
    return out;
}

std::string RunReport::flow_error() const {
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto &s = stages[i];
        if (s.in != s.out + s.rejected())
            return "stage " + s.stage + ": in " + std::to_string(s.in) + " != out " + std::to_string(s.out) +
                   " + rejected " + std::to_string(s.rejected());
        if (i + 1 < stages.size() && s.out != stages[i + 1].in)
            return "stage " + s.stage + " out " + std::to_string(s.out) + " != stage " + stages[i + 1].stage +
                   " in " + std::to_string(stages[i + 1].in);
    }
    return "";
}

nlohmann::ordered_json to_json(const StageReport &s) {
    nlohmann::ordered_json j;
    j["stage"] = s.stage;
    j["in"] = s.in;
    j["out"] = s.out;
    j["rejections"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : s.rejections) j["rejections"][k] = v;
    return j;
}

StageReport stage_from_json(const nlohmann::json &j) {
    StageReport s;
    s.stage = j.at("stage").get<std::string>();
    s.in = j.at("in").get<std::uint64_t>();
    s.out = j.at("out").get<std::uint64_t>();
    for (const auto &[k, v] : j.at("rejections").items()) s.rejections[k] = v.get<std::uint64_t>();
    return s;
}

nlohmann::ordered_json to_json(const RunReport &r) {
    nlohmann::ordered_json j;
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto &s : r.stages) j["stages"].push_back(to_json(s));
    j["collections"] = nlohmann::ordered_json::object();
    for (const auto &[name, y] : r.collections) {
        nlohmann::ordered_json c;
        c["warc_bytes"] = y.warc_bytes;
        c["records"] = y.records;
        c["malformed_records"] = y.malformed_records;
        c["docs_out"] = y.docs_out;
        c["chars_out"] = y.chars_out;
        c["chars_per_byte"] = y.chars_per_byte();
        j["collections"][name] = std::move(c);
    }
    j["warnings"] = r.warnings;
    return j;
}

RunReport report_from_json(const nlohmann::json &j) {
    try {
        RunReport r;
        for (const auto &s : j.at("stages")) r.stages.push_back(stage_from_json(s));
        for (const auto &[name, c] : j.at("collections").items()) {
            CollectionYield y;
            y.warc_bytes = c.at("warc_bytes").get<std::uint64_t>();
            y.records = c.at("records").get<std::uint64_t>();
            y.malformed_records = c.at("malformed_records").get<std::uint64_t>();
            y.docs_out = c.at("docs_out").get<std::uint64_t>();
            y.chars_out = c.at("chars_out").get<std::uint64_t>();
            r.collections[name] = y;
        }
        r.warnings = j.value("warnings", std::vector<std::string>{});
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("bad run report: ") + e.what());
    }
}

} // namespace webcorp::pipeline
