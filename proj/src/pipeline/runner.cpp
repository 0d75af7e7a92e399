#include "webcorp/pipeline/runner.hpp"

#include "webcorp/clean/doc_id.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/parallel.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"
#include "webcorp/dedup/documents.hpp"
#include "webcorp/warc/record.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace webcorp::pipeline {

namespace fs = std::filesystem;

Resources load_resources(const PipelineConfig &config) {
    const auto &r = config.resources;
    Resources res;
    try {
        if (config.stages.trash && !r.trash_list.empty()) res.trash = warc::TrashFilter::load(r.trash_list);
        if (config.stages.mt_markup && !r.mt_indicators.empty()) res.mt = extract::MtDetector::load(r.mt_indicators);
        if (r.lid_seeds.empty()) throw ConfigError("resources.lid_seeds is required");
        auto lid = std::make_unique<extract::NgramLid>(extract::NgramLid::from_directory(r.lid_seeds));
        if (lid->labels().empty()) throw ConfigError("no LID seed profiles in '" + r.lid_seeds + "'");
        res.lid = std::move(lid);
        if (!r.public_suffix.empty()) res.psl = PublicSuffixList::load(r.public_suffix);
        if (config.stages.clean && config.stages.adult_url && !r.adult_list.empty())
            res.adult = clean::AdultBlocklist::load(r.adult_list);
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(e.what());
    }
    return res;
}

std::vector<std::string> list_inputs(const std::vector<std::string> &paths) {
    std::vector<std::string> out;
    for (const auto &p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> files;
            for (const auto &e : fs::directory_iterator(p)) {
                auto name = e.path().filename().string();
                if (e.is_regular_file() && !name.empty() && name[0] != '.') files.push_back(e.path().string());
            }
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else if (fs::is_regular_file(p)) {
            out.push_back(p);
        } else {
            throw ConfigError("input not found: " + p);
        }
    }
    return out;
}

namespace {

struct FileJob {
    std::string collection;
    std::string path;
};

struct FileResult {
    std::vector<warc::HtmlCapture> captures;
    std::vector<warc::RobotsCapture> robots;
    warc::ParseStats stats;
    warc::SelectStats select;
    std::uint64_t bytes = 0;
};

FileResult ingest_file(const FileJob &job) {
    FileResult r;
    std::ifstream in(job.path, std::ios::binary);
    if (!in) throw DataError("cannot open WARC file " + job.path);
    r.bytes = fs::file_size(job.path);
    auto records = warc::parse_warc_stream(in, fs::path(job.path).filename().string(), &r.stats);
    for (const auto &rec : records) {
        if (auto robots = warc::to_robots_capture(rec)) r.robots.push_back(std::move(*robots));
        warc::SelectOutcome outcome{};
        auto cap = warc::to_html_capture(rec, outcome);
        switch (outcome) {
        case warc::SelectOutcome::kept: ++r.select.kept; break;
        case warc::SelectOutcome::not_selected: ++r.select.not_selected; break;
        case warc::SelectOutcome::unparseable_http: ++r.select.unparseable_http; break;
        }
        if (cap) r.captures.push_back(std::move(*cap));
    }
    return r;
}

void log_line(std::ostream *log, const std::string &msg) {
    if (log) *log << msg << '\n';
}

std::string dump_line(const nlohmann::ordered_json &j) {
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

template <typename T, typename Fn>
std::vector<T> read_jsonl(const std::string &path, Fn parse) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::vector<T> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) continue;
        try {
            out.push_back(parse(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception &e) {
            throw DataError(path + ":" + std::to_string(n) + ": " + e.what());
        } catch (const DataError &e) {
            throw DataError(path + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

template <typename T, typename Fn>
void write_jsonl_with(const std::string &path, const std::vector<T> &items, Fn to) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    for (const auto &item : items) out << dump_line(to(item)) << '\n';
    if (!out) throw Error("write failed: " + path);
}

} // namespace

IngestResult ingest(const std::vector<CollectionInput> &collections, const warc::TrashFilter *trash,
                    std::size_t shards) {
    std::vector<FileJob> jobs;
    IngestResult res;
    for (const auto &col : collections) {
        res.yields[col.label];
        for (auto &f : list_inputs(col.paths)) jobs.push_back({col.label, f});
    }
    std::vector<FileResult> results(jobs.size());
    parallel_for(jobs.size(), shards, [&](std::size_t i) { results[i] = ingest_file(jobs[i]); });

    res.ingest.rejections = {{"not_selected", 0}, {"unparseable_http", 0}};
    res.trash.rejections = {{"trash_url", 0}, {"unparseable_url", 0}};
    std::map<std::string, std::map<std::string, warc::RobotsCapture>> robots;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto &r = results[i];
        const auto &col = jobs[i].collection;
        auto &y = res.yields[col];
        y.warc_bytes += r.bytes;
        y.records += r.stats.records;
        y.malformed_records += r.stats.skipped;
        for (const auto &w : r.stats.warnings) res.warnings.push_back(jobs[i].path + ": " + w);

        res.ingest.in += r.stats.records;
        res.ingest.out += r.select.kept;
        res.ingest.rejections["not_selected"] += r.select.not_selected;
        res.ingest.rejections["unparseable_http"] += r.select.unparseable_http;

        for (auto &cap : r.captures) {
            ++res.trash.in;
            auto d = trash ? trash->decide(cap.url) : warc::TrashDecision::keep;
            if (d == warc::TrashDecision::drop) {
                ++res.trash.rejections["trash_url"];
                continue;
            }
            if (d == warc::TrashDecision::drop_unparseable) {
                ++res.trash.rejections["unparseable_url"];
                continue;
            }
            ++res.trash.out;
            res.captures.push_back({col, std::move(cap)});
        }
        for (const auto &rc : r.robots) warc::merge_robots(robots[col], rc);
    }
    for (auto &[col, by_host] : robots) {
        for (auto &[host, cap] : by_host) res.robots.push_back({col, cap});
    }
    return res;
}

ExtractStageResult extract_documents(const std::vector<CaptureRecord> &captures, const extract::ExtractContext &ctx,
                                     std::size_t shards) {
    std::vector<std::optional<extract::ExtractedDocument>> docs(captures.size());
    std::vector<extract::ExtractOutcome> outcomes(captures.size(), extract::ExtractOutcome::kept);
    parallel_for(captures.size(), shards, [&](std::size_t i) {
        docs[i] = extract::process_capture(captures[i].capture, captures[i].collection, ctx, outcomes[i]);
    });
    ExtractStageResult r;
    r.report.in = captures.size();
    r.report.rejections = {{"mt_markup", 0}, {"empty_text", 0}};
    for (std::size_t i = 0; i < docs.size(); ++i) {
        switch (outcomes[i]) {
        case extract::ExtractOutcome::kept: r.docs.push_back(std::move(*docs[i])); break;
        case extract::ExtractOutcome::mt_markup: ++r.report.rejections["mt_markup"]; break;
        case extract::ExtractOutcome::empty_text: ++r.report.rejections["empty_text"]; break;
        }
    }
    r.report.out = r.docs.size();
    return r;
}

std::vector<extract::ExtractedDocument> apply_lid_gate(std::vector<extract::ExtractedDocument> docs,
                                                       const clean::Thresholds &t, bool enabled, StageReport &report) {
    report = StageReport{"lid_gate"};
    report.in = docs.size();
    report.rejections = {{"lid_prob", 0}};
    std::vector<extract::ExtractedDocument> out;
    for (auto &d : docs) {
        if (enabled && !clean::lid_gate(d, t).kept) {
            ++report.rejections["lid_prob"];
            continue;
        }
        out.push_back(std::move(d));
    }
    report.out = out.size();
    return out;
}

std::vector<extract::ExtractedDocument> apply_dedup(std::vector<extract::ExtractedDocument> docs, bool enabled,
                                                    std::size_t shards, double threshold, StageReport &report) {
    report = StageReport{"dedup"};
    report.in = docs.size();
    report.rejections = {{"near_duplicate", 0}};
    if (!enabled) {
        report.out = docs.size();
        return docs;
    }
    auto result = dedup::deduplicate(docs, shards, threshold);
    std::vector<extract::ExtractedDocument> out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (result.keep[i]) out.push_back(std::move(docs[i]));
    }
    report.rejections["near_duplicate"] = result.removed;
    report.out = out.size();
    return out;
}

std::vector<extract::ExtractedDocument> apply_dedup(std::vector<extract::ExtractedDocument> docs, bool enabled,
                                                    std::size_t shards, StageReport &report) {
    return apply_dedup(std::move(docs), enabled, shards, dedup::kJaccardThreshold, report);
}

std::vector<clean::CleanedDocument> enrich_documents(const std::vector<extract::ExtractedDocument> &docs,
                                                     const extract::LanguageIdentifier &lid, std::size_t shards) {
    std::vector<clean::CleanedDocument> out(docs.size());
    parallel_for(docs.size(), shards, [&](std::size_t i) { out[i] = clean::enrich(docs[i], lid); });
    return out;
}

std::map<std::string, clean::ExclusionIndex> build_exclusions(const std::vector<clean::CleanedDocument> &docs,
                                                              const std::vector<RobotsRecord> &robots) {
    std::map<std::string, std::map<std::string, clean::RobotsPolicy>> policies;
    for (const auto &r : robots) policies[r.collection][r.capture.host] = clean::parse_robots(r.capture.body);
    std::map<std::string, std::vector<std::string>> urls;
    for (const auto &d : docs) urls[d.collection].push_back(d.url);
    std::map<std::string, clean::ExclusionIndex> out;
    for (const auto &[col, list] : urls) {
        auto it = policies.find(col);
        if (it == policies.end()) continue;
        out[col] = clean::ExclusionIndex::build(clean::disallowed_urls(list, it->second));
    }
    return out;
}

void write_exclusion_images(const std::string &dir, const std::map<std::string, clean::ExclusionIndex> &exclusions) {
    fs::create_directories(dir);
    for (const auto &[collection, idx] : exclusions)
        write_file((fs::path(dir) / ("robots." + collection + ".wcxi")).string(), idx.serialize());
}

std::vector<clean::CleanedDocument> apply_clean_gates(const std::vector<clean::CleanedDocument> &docs,
                                                      const std::map<std::string, clean::ExclusionIndex> &exclusions,
                                                      const Resources &res, const PipelineConfig &config,
                                                      StageReport &report) {
    report = StageReport{"clean"};
    report.in = docs.size();
    for (auto r : clean::kAllReasons) {
        if (r != clean::RejectReason::lid_prob) report.rejections[std::string(clean::reason_name(r))] = 0;
    }
    clean::GateContext ctx;
    ctx.adult = res.adult ? &*res.adult : nullptr;
    ctx.psl = res.psl ? &*res.psl : nullptr;
    ctx.thresholds = config.thresholds.gates();
    ctx.enabled = {config.stages.robots, config.stages.wds, config.stages.doc_length, config.stages.seg_length,
                   config.stages.adult_url};
    std::vector<clean::CleanedDocument> out;
    for (const auto &d : docs) {
        auto it = exclusions.find(d.collection);
        ctx.exclusions = it == exclusions.end() ? nullptr : &it->second;
        auto decision = clean::apply_gates(d, ctx);
        if (!decision.kept) {
            ++report.rejections[std::string(clean::reason_name(*decision.reason))];
            continue;
        }
        out.push_back(d);
    }
    report.out = out.size();
    return out;
}

void sort_documents(std::vector<clean::CleanedDocument> &docs) {
    std::sort(docs.begin(), docs.end(), [](const clean::CleanedDocument &a, const clean::CleanedDocument &b) {
        return std::tie(a.id, a.text, a.url) < std::tie(b.id, b.text, b.url);
    });
}

void write_jsonl(const std::string &path, const std::vector<clean::CleanedDocument> &docs) {
    write_jsonl_with(path, docs, [](const clean::CleanedDocument &d) { return clean::to_json(d); });
}

std::vector<clean::CleanedDocument> read_cleaned_jsonl(const std::string &path) {
    return read_jsonl<clean::CleanedDocument>(path, clean::cleaned_from_json);
}

void write_extracted_jsonl(const std::string &path, const std::vector<extract::ExtractedDocument> &docs) {
    write_jsonl_with(path, docs, [](const extract::ExtractedDocument &d) { return extract::to_json(d); });
}

std::vector<extract::ExtractedDocument> read_extracted_jsonl(const std::string &path) {
    return read_jsonl<extract::ExtractedDocument>(path, extract::document_from_json);
}

void write_captures_jsonl(const std::string &path, const std::vector<CaptureRecord> &caps) {
    write_jsonl_with(path, caps, [](const CaptureRecord &c) {
        auto j = warc::to_json(c.capture);
        j["collection"] = c.collection;
        return j;
    });
}

std::vector<CaptureRecord> read_captures_jsonl(const std::string &path) {
    return read_jsonl<CaptureRecord>(path, [](const nlohmann::json &j) {
        return CaptureRecord{j.at("collection").get<std::string>(), warc::capture_from_json(j)};
    });
}

void write_robots_jsonl(const std::string &path, const std::vector<RobotsRecord> &robots) {
    write_jsonl_with(path, robots, [](const RobotsRecord &r) {
        auto j = warc::to_json(r.capture);
        j["collection"] = r.collection;
        return j;
    });
}

std::vector<RobotsRecord> read_robots_jsonl(const std::string &path) {
    return read_jsonl<RobotsRecord>(path, [](const nlohmann::json &j) {
        return RobotsRecord{j.at("collection").get<std::string>(), warc::robots_from_json(j)};
    });
}

namespace {

class Checkpoints {
  public:
    Checkpoints(const PipelineConfig &config, bool resume)
        : dir_(fs::path(config.work_dir) / config_hash(config).substr(0, 16)), resume_(resume) {
        fs::create_directories(dir_);
    }

    [[nodiscard]] bool ready(const std::string &stage) const {
        return resume_ && fs::exists(dir_ / (stage + ".done"));
    }
    [[nodiscard]] std::string path(const std::string &name) const { return (dir_ / name).string(); }

    void begin(const std::string &stage) const { fs::remove(dir_ / (stage + ".done")); }

    void finish(const std::string &stage, const nlohmann::ordered_json &meta) const {
        write_file(path(stage + ".json"), meta.dump(2) + "\n");
        write_file(path(stage + ".done"), "");
    }

    [[nodiscard]] nlohmann::json meta(const std::string &stage) const {
        return nlohmann::json::parse(read_file(path(stage + ".json")));
    }

  private:
    fs::path dir_;
    bool resume_;
};

} // namespace

RunReport run_pipeline(const PipelineConfig &config, const RunOptions &opts) {
    const auto shards = static_cast<std::size_t>(std::max<std::uint64_t>(1, config.shards));
    auto res = load_resources(config);
    Checkpoints cp(config, opts.resume);
    RunReport report;

    // ingest + trash
    std::vector<CaptureRecord> captures;
    std::vector<RobotsRecord> robots;
    if (cp.ready("ingest")) {
        log_line(opts.log, "ingest: resumed from checkpoint");
        captures = read_captures_jsonl(cp.path("ingest.captures.jsonl"));
        robots = read_robots_jsonl(cp.path("ingest.robots.jsonl"));
        auto meta = cp.meta("ingest");
        report = report_from_json(meta);
    } else {
        cp.begin("ingest");
        auto ing = ingest(config.collections, res.trash ? &*res.trash : nullptr, shards);
        captures = std::move(ing.captures);
        robots = std::move(ing.robots);
        report.stages = {ing.ingest, ing.trash};
        report.collections = ing.yields;
        report.warnings = ing.warnings;
        write_captures_jsonl(cp.path("ingest.captures.jsonl"), captures);
        write_robots_jsonl(cp.path("ingest.robots.jsonl"), robots);
        cp.finish("ingest", to_json(report));
        log_line(opts.log, "ingest: " + std::to_string(captures.size()) + " HTML captures, " +
                               std::to_string(robots.size()) + " robots.txt files");
    }

    // extract
    std::vector<extract::ExtractedDocument> docs;
    if (cp.ready("extract")) {
        log_line(opts.log, "extract: resumed from checkpoint");
        docs = read_extracted_jsonl(cp.path("extract.docs.jsonl"));
        report.stages.push_back(stage_from_json(cp.meta("extract")));
    } else {
        cp.begin("extract");
        extract::ExtractContext ctx{res.mt ? &*res.mt : nullptr, &res.extractor, res.lid.get()};
        auto ex = extract_documents(captures, ctx, shards);
        docs = std::move(ex.docs);
        report.stages.push_back(ex.report);
        write_extracted_jsonl(cp.path("extract.docs.jsonl"), docs);
        cp.finish("extract", to_json(ex.report));
        log_line(opts.log, "extract: " + std::to_string(docs.size()) + " documents");
    }
    captures.clear();

    // lid gate + dedup + enrichment
    std::vector<clean::CleanedDocument> deduped;
    if (cp.ready("dedup")) {
        log_line(opts.log, "dedup: resumed from checkpoint");
        deduped = read_cleaned_jsonl(cp.path("dedup.docs.jsonl"));
        for (const auto &s : cp.meta("dedup")) report.stages.push_back(stage_from_json(s));
    } else {
        cp.begin("dedup");
        StageReport lid_report, dedup_report;
        auto gated = apply_lid_gate(std::move(docs), config.thresholds.gates(), config.stages.lid, lid_report);
        auto kept = apply_dedup(std::move(gated), config.stages.dedup, shards, config.thresholds.jaccard, dedup_report);
        deduped = enrich_documents(kept, *res.lid, shards);
        sort_documents(deduped);
        report.stages.push_back(lid_report);
        report.stages.push_back(dedup_report);
        write_jsonl(cp.path("dedup.docs.jsonl"), deduped);
        auto meta = nlohmann::ordered_json::array({to_json(lid_report), to_json(dedup_report)});
        cp.finish("dedup", meta);
        log_line(opts.log, "dedup: " + std::to_string(deduped.size()) + " documents kept");
    }

    fs::create_directories(config.output_dir);
    const auto out_dir = fs::path(config.output_dir);
    write_jsonl((out_dir / "deduplicated.jsonl").string(), deduped);

    const std::vector<clean::CleanedDocument> *final_docs = &deduped;
    std::vector<clean::CleanedDocument> cleaned;
    if (config.stages.clean) {
        StageReport clean_report;
        auto exclusions = build_exclusions(deduped, robots);
        write_exclusion_images(cp.path(""), exclusions);
        cleaned = apply_clean_gates(deduped, exclusions, res, config, clean_report);
        report.stages.push_back(clean_report);
        write_jsonl((out_dir / "cleaned.jsonl").string(), cleaned);
        final_docs = &cleaned;
        log_line(opts.log, "clean: " + std::to_string(cleaned.size()) + " documents kept");
    } else {
        fs::remove(out_dir / "cleaned.jsonl");
    }

    for (auto &[_, y] : report.collections) {
        y.docs_out = 0;
        y.chars_out = 0;
    }
    for (const auto &d : *final_docs) {
        auto &y = report.collections[d.collection];
        ++y.docs_out;
        y.chars_out += utf8::length(d.text);
    }

    if (auto err = report.flow_error(); !err.empty()) throw Error("run report flow violation: " + err);
    write_file((out_dir / "run_report.json").string(), to_json(report).dump(2) + "\n");
    return report;
}

} // namespace webcorp::pipeline
