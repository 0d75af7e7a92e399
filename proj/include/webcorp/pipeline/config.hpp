#pragma once

#include "webcorp/clean/gates.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::pipeline {

/// One crawl collection: a label and the WARC files or directories it
/// reads. Directories contribute every regular file in them, sorted by name.
struct CollectionInput {
    std::string label;
    std::vector<std::string> paths;

    bool operator==(const CollectionInput &) const = default;
};

struct StageToggles {
    bool trash = true;
    bool mt_markup = true;
    bool lid = true;
    bool dedup = true;
    bool clean = true;  // false: only the "deduplicated" variant is written
    bool robots = true;
    bool wds = true;
    bool doc_length = true;
    bool seg_length = true;
    bool adult_url = true;

    bool operator==(const StageToggles &) const = default;
};

struct ThresholdConfig {
    double lid_prob = 0.5;
    double jaccard = 0.8;
    double wds = 5.0;
    std::uint64_t doc_len = 500;
    double words_per_seg = 5.0;
    double cjk_chars = 10.0;
    double pair_score = 0.5;

    [[nodiscard]] clean::Thresholds gates() const;
    bool operator==(const ThresholdConfig &) const = default;
};

/// Empty path = resource not used. Defaults point into the bundled
/// resource directory.
struct ResourcePaths {
    std::string trash_list;
    std::string adult_list;      // UT1 category dir with `domains` and `urls`
    std::string public_suffix;
    std::string country_tlds;
    std::string stopwords;       // dir of <lang>.txt
    std::string lid_seeds;       // dir of <label>.txt
    std::string lexicons;        // dir of <trg-lang>.tsv
    std::string mt_indicators;
    std::string srx;

    bool operator==(const ResourcePaths &) const = default;
};

struct PipelineConfig {
    std::vector<CollectionInput> collections;
    StageToggles stages;
    ThresholdConfig thresholds;
    ResourcePaths resources;
    std::uint64_t shards = 1;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    std::string work_dir = "work";

    bool operator==(const PipelineConfig &) const = default;
};

/// Defaults with resource paths resolved against default_resource_dir().
PipelineConfig default_config();

/// Parses the INI text. Sections: [collections] (label = path, path ...),
/// [stages], [thresholds], [resources], [run] (shards, seed), [output]
/// (dir, work_dir). Unknown sections or keys, type errors, out-of-range
/// thresholds and missing files are all collected and reported together
/// in one ConfigError. WEBCORP_<KEY> environment variables override the
/// [resources] paths (e.g. WEBCORP_ADULT_LIST). Relative paths are
/// resolved against `base_dir` when it is non-empty.
PipelineConfig validate_config(std::string_view text, const std::string &base_dir = "",
                               bool check_files = true);

PipelineConfig load_config(const std::string &path, bool check_files = true);

/// Canonical INI text; validate_config(to_ini(c)) == c.
std::string to_ini(const PipelineConfig &c);

/// SHA-256 over the canonical text, excluding the shard count and the
/// output and work directories.
std::string config_hash(const PipelineConfig &c);

} // namespace webcorp::pipeline
