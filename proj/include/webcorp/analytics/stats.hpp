#pragma once

#include "webcorp/clean/document.hpp"
#include "webcorp/clean/gates.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_set>

namespace webcorp::analytics {

struct StatsRow {
    std::uint64_t doc_count = 0;
    std::uint64_t segment_count = 0;
    double unique_segment_pct = 0.0;
    double docs_over_25_segments_pct = 0.0;
    double short_segment_pct = 0.0;
    double seg_lang_match_pct = 0.0;
    std::uint64_t char_count = 0;
    std::uint64_t word_count = 0;
};

/// Mergeable partial aggregate. Percentages are derived from pooled counts
/// at the end, never averaged.
class StatsAccumulator {
  public:
    explicit StatsAccumulator(clean::Thresholds short_def = {}) : short_def_(short_def) {}

    void add(const clean::CleanedDocument &doc);
    void merge(const StatsAccumulator &other);
    [[nodiscard]] StatsRow row() const;
    [[nodiscard]] std::uint64_t docs() const { return docs_; }

  private:
    clean::Thresholds short_def_;
    std::uint64_t docs_ = 0;
    std::uint64_t segments_ = 0;
    std::uint64_t long_docs_ = 0;
    std::uint64_t short_segments_ = 0;
    std::uint64_t lang_match_ = 0;
    std::uint64_t chars_ = 0;
    std::uint64_t words_ = 0;
    std::unordered_set<std::string> distinct_;
};

struct CorpusStats {
    StatsRow overall;
    std::map<std::string, StatsRow> per_collection;
    std::uint64_t malformed_lines = 0;
};

/// Segments are the non-empty '\n'-separated lines. A short segment has
/// fewer than 5 words (fewer than 10 scalars for jpn/zho/kor documents),
/// as in the cleaning gate. Throws Error("empty corpus") when no document
/// parses.
class CorpusStatsBuilder {
  public:
    explicit CorpusStatsBuilder(clean::Thresholds short_def = {}) : short_def_(short_def), all_(short_def) {}
    void add(const clean::CleanedDocument &doc);
    void add_malformed() { ++malformed_; }
    void merge(const CorpusStatsBuilder &other);
    [[nodiscard]] CorpusStats finish() const;

  private:
    clean::Thresholds short_def_;
    StatsAccumulator all_;
    std::map<std::string, StatsAccumulator> per_collection_;
    std::uint64_t malformed_ = 0;
};

CorpusStats compute_stats(std::istream &jsonl, clean::Thresholds short_def = {});

/// "scope,doc_count,..." with an "all" row followed by one row per collection.
std::string stats_csv(const CorpusStats &stats);
std::string stats_text(const CorpusStats &stats);

} // namespace webcorp::analytics
