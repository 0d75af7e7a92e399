#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace webcorp::pipeline {

/// Documents entering and leaving one stage; in == out + sum(rejections).
struct StageReport {
    std::string stage;
    std::uint64_t in = 0;
    std::uint64_t out = 0;
    std::map<std::string, std::uint64_t> rejections;

    StageReport() = default;
    explicit StageReport(std::string name) : stage(std::move(name)) {}

    [[nodiscard]] std::uint64_t rejected() const;
    bool operator==(const StageReport &) const = default;
};

struct CollectionYield {
    std::uint64_t warc_bytes = 0;   // input file sizes
    std::uint64_t records = 0;      // WARC records parsed
    std::uint64_t malformed_records = 0;
    std::uint64_t docs_out = 0;     // final variant
    std::uint64_t chars_out = 0;

    [[nodiscard]] double chars_per_byte() const {
        return warc_bytes ? static_cast<double>(chars_out) / static_cast<double>(warc_bytes) : 0.0;
    }
    bool operator==(const CollectionYield &) const = default;
};

struct RunReport {
    std::vector<StageReport> stages;
    std::map<std::string, CollectionYield> collections;
    std::vector<std::string> warnings;

    [[nodiscard]] const StageReport *stage(const std::string &name) const;
    /// Rejections across all stages, by reason.
    [[nodiscard]] std::map<std::string, std::uint64_t> rejections() const;
    /// First violation of out(i) == in(i+1) or in == out + rejected, if any.
    [[nodiscard]] std::string flow_error() const;

    bool operator==(const RunReport &) const = default;
};

nlohmann::ordered_json to_json(const RunReport &r);
RunReport report_from_json(const nlohmann::json &j);
nlohmann::ordered_json to_json(const StageReport &s);
StageReport stage_from_json(const nlohmann::json &j);

} // namespace webcorp::pipeline
