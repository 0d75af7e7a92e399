#pragma once

#include "webcorp/analytics/domains.hpp"
#include "webcorp/clean/adult.hpp"
#include "webcorp/clean/document.hpp"
#include "webcorp/clean/robots.hpp"
#include "webcorp/extract/document.hpp"
#include "webcorp/extract/extractor.hpp"
#include "webcorp/extract/lid.hpp"
#include "webcorp/extract/mt_markup.hpp"
#include "webcorp/pipeline/config.hpp"
#include "webcorp/pipeline/report.hpp"
#include "webcorp/warc/capture.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace webcorp::pipeline {

/// Resources loaded once before any stage runs; immutable afterwards.
struct Resources {
    std::optional<warc::TrashFilter> trash;
    std::optional<extract::MtDetector> mt;
    extract::DensityExtractor extractor;
    std::unique_ptr<extract::LanguageIdentifier> lid;
    std::optional<clean::AdultBlocklist> adult;
    std::optional<PublicSuffixList> psl;
};

/// Throws ConfigError naming the first unusable resource.
Resources load_resources(const PipelineConfig &config);

/// Regular files of each path (directories are listed non-recursively,
/// sorted by name; hidden files skipped).
std::vector<std::string> list_inputs(const std::vector<std::string> &paths);

struct CaptureRecord {
    std::string collection;
    warc::HtmlCapture capture;
};

struct RobotsRecord {
    std::string collection;
    warc::RobotsCapture capture;
};

struct IngestResult {
    std::vector<CaptureRecord> captures;  // stream order
    std::vector<RobotsRecord> robots;     // one per (collection, host), sorted
    StageReport ingest{std::string("ingest")};
    StageReport trash{std::string("trash")};
    std::map<std::string, CollectionYield> yields;
    std::vector<std::string> warnings;
};

/// Reads every collection's WARC files (files spread over `shards`
/// threads), selects HTML captures, applies the trash filter (when given)
/// and captures robots.txt bodies.
IngestResult ingest(const std::vector<CollectionInput> &collections, const warc::TrashFilter *trash,
                    std::size_t shards);

struct ExtractStageResult {
    std::vector<extract::ExtractedDocument> docs;  // capture order
    StageReport report{std::string("extract")};
};

ExtractStageResult extract_documents(const std::vector<CaptureRecord> &captures, const extract::ExtractContext &ctx,
                                     std::size_t shards);

/// Splits `docs` by the LID gate; report stage "lid_gate".
std::vector<extract::ExtractedDocument> apply_lid_gate(std::vector<extract::ExtractedDocument> docs,
                                                       const clean::Thresholds &t, bool enabled, StageReport &report);

/// Near-duplicate removal per collection; report stage "dedup".
std::vector<extract::ExtractedDocument> apply_dedup(std::vector<extract::ExtractedDocument> docs, bool enabled,
                                                    std::size_t shards, StageReport &report);

std::vector<clean::CleanedDocument> enrich_documents(const std::vector<extract::ExtractedDocument> &docs,
                                                     const extract::LanguageIdentifier &lid, std::size_t shards);

/// Per-collection exclusion indexes of the document URLs disallowed by
/// their host's robots.txt.
std::map<std::string, clean::ExclusionIndex> build_exclusions(const std::vector<clean::CleanedDocument> &docs,
                                                              const std::vector<RobotsRecord> &robots);

/// One "robots.<collection>.wcxi" image per collection in `dir`.
void write_exclusion_images(const std::string &dir, const std::map<std::string, clean::ExclusionIndex> &exclusions);

/// Post-dedup gates in their fixed order; report stage "clean".
std::vector<clean::CleanedDocument> apply_clean_gates(const std::vector<clean::CleanedDocument> &docs,
                                                      const std::map<std::string, clean::ExclusionIndex> &exclusions,
                                                      const Resources &res, const PipelineConfig &config,
                                                      StageReport &report);

/// Sorted by (id, text, url): the canonical output order.
void sort_documents(std::vector<clean::CleanedDocument> &docs);

void write_jsonl(const std::string &path, const std::vector<clean::CleanedDocument> &docs);
std::vector<clean::CleanedDocument> read_cleaned_jsonl(const std::string &path);
void write_extracted_jsonl(const std::string &path, const std::vector<extract::ExtractedDocument> &docs);
std::vector<extract::ExtractedDocument> read_extracted_jsonl(const std::string &path);
void write_captures_jsonl(const std::string &path, const std::vector<CaptureRecord> &caps);
std::vector<CaptureRecord> read_captures_jsonl(const std::string &path);
void write_robots_jsonl(const std::string &path, const std::vector<RobotsRecord> &robots);
std::vector<RobotsRecord> read_robots_jsonl(const std::string &path);

struct RunOptions {
    bool resume = false;
    std::ostream *log = nullptr;
};

/// ingest -> trash -> extract -> lid_gate -> dedup -> (enrichment, written
/// as <output>/deduplicated.jsonl) -> clean gates -> <output>/cleaned.jsonl,
/// plus <output>/run_report.json. Checkpoints live under
/// <work_dir>/<config hash>/; with `resume`, completed stages are loaded
/// instead of recomputed.
RunReport run_pipeline(const PipelineConfig &config, const RunOptions &opts = {});

} // namespace webcorp::pipeline
