// webcorp command line: one subcommand per pipeline stage plus `run`.

#include "webcorp/analytics/domains.hpp"
#include "webcorp/analytics/inspect.hpp"
#include "webcorp/analytics/ngrams.hpp"
#include "webcorp/analytics/stats.hpp"
#include "webcorp/bitext/lang_codes.hpp"
#include "webcorp/bitext/pairs.hpp"
#include "webcorp/bitext/sentences.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/dedup/documents.hpp"
#include "webcorp/dedup/signature_io.hpp"
#include "webcorp/pipeline/config.hpp"
#include "webcorp/pipeline/runner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace webcorp;

namespace {

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> shards;
    std::optional<std::uint64_t> seed;
    bool resume = false;
    bool quiet = false;
};

pipeline::PipelineConfig effective_config(const Globals &g) {
    auto c = g.config_path.empty() ? pipeline::validate_config("") : pipeline::load_config(g.config_path);
    if (g.shards) {
        if (*g.shards == 0) throw ConfigError("--shards must be at least 1");
        c.shards = *g.shards;
    }
    if (g.seed) c.seed = *g.seed;
    return c;
}

std::ostream *log_stream(const Globals &g) { return g.quiet ? nullptr : &std::cerr; }

void print_stage(const pipeline::StageReport &s) {
    std::cerr << s.stage << ": in=" << s.in << " out=" << s.out;
    for (const auto &[reason, n] : s.rejections) {
        if (n) std::cerr << ' ' << reason << '=' << n;
    }
    std::cerr << '\n';
}

std::ofstream open_out(const std::string &path) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    return out;
}

void write_or_print(const std::string &path, const std::string &data) {
    if (path.empty() || path == "-") {
        std::cout << data;
    } else {
        write_file(path, data);
    }
}

// "fin=pairs.tsv" -> (fin, pairs.tsv)
std::pair<std::string, std::string> lang_path(const std::string &spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        throw ConfigError("expected LANG=PATH, got '" + spec + "'");
    return {spec.substr(0, eq), spec.substr(eq + 1)};
}

std::vector<bitext::SentencePair> load_pairs(const std::string &path, const std::string &src, const std::string &trg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return bitext::read_pair_tsv(in, src, trg);
}

std::unordered_set<std::string> stopwords_for(const pipeline::PipelineConfig &c, const std::string &file,
                                              const std::string &lang) {
    if (!file.empty()) return analytics::load_stopwords(file);
    if (c.resources.stopwords.empty() || lang.empty()) return {};
    auto p = fs::path(c.resources.stopwords) / (std::string(extract::language_part(lang)) + ".txt");
    if (!fs::exists(p)) return {};
    return analytics::load_stopwords(p.string());
}

std::map<std::string, std::string> load_strata(const std::string &path) {
    std::map<std::string, std::string> out;
    if (path.empty()) return out;
    for (const auto &line : read_list_file(path)) {
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ConfigError("strata file line needs collection<TAB>stratum: " + line);
        out[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"webcorp: web-crawl corpus pipeline"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "Pipeline config file (key = value sections)");
    app.add_option("--shards", g.shards, "Worker shard count (overrides config)");
    app.add_option("--seed", g.seed, "Sampling seed (overrides config)");
    app.add_flag("--resume", g.resume, "Reuse finished stage checkpoints");
    app.add_flag("-q,--quiet", g.quiet, "No progress output");

    // run
    auto *run = app.add_subcommand("run", "Full pipeline: ingest to cleaned JSONL");
    std::vector<std::string> run_inputs;
    std::string run_collection = "default", run_out;
    run->add_option("inputs", run_inputs, "WARC files or directories (default: the config [collections] section)");
    run->add_option("--collection", run_collection, "Label for positional inputs");
    run->add_option("-o,--output-dir", run_out, "Output directory (overrides config)");

    // config
    auto *cfg = app.add_subcommand("config", "Print the effective configuration");

    // ingest
    auto *ing = app.add_subcommand("ingest", "WARC files to HTML capture JSONL");
    std::vector<std::string> ing_inputs;
    std::string ing_collection = "default", ing_out = "-", ing_robots;
    ing->add_option("inputs", ing_inputs, "WARC files or directories")->required();
    ing->add_option("--collection", ing_collection, "Collection label");
    ing->add_option("-o,--out", ing_out, "Capture JSONL output");
    ing->add_option("--robots-out", ing_robots, "robots.txt capture JSONL output");

    // extract
    auto *ext = app.add_subcommand("extract", "HTML capture JSONL to document JSONL");
    std::string ext_in, ext_out = "-";
    ext->add_option("-i,--in", ext_in, "Capture JSONL")->required();
    ext->add_option("-o,--out", ext_out, "Document JSONL output");

    // dedup
    auto *ded = app.add_subcommand("dedup", "LID gate and near-duplicate removal");
    std::string ded_in, ded_out = "-", ded_sigs, ded_clusters;
    ded->add_option("-i,--in", ded_in, "Document JSONL")->required();
    ded->add_option("-o,--out", ded_out, "Kept document JSONL");
    ded->add_option("--signatures", ded_sigs, "Write MinHash signature shard");
    ded->add_option("--clusters", ded_clusters, "Write duplicate clusters as JSONL (url lists)");

    // clean
    auto *cln = app.add_subcommand("clean", "Enrichment, robots and quality gates");
    std::string cln_in, cln_out = "-", cln_robots, cln_dedup_out, cln_excl_dir;
    cln->add_option("-i,--in", cln_in, "Deduplicated document JSONL (extract schema)")->required();
    cln->add_option("--robots", cln_robots, "robots.txt capture JSONL");
    cln->add_option("-o,--out", cln_out, "Cleaned JSONL output");
    cln->add_option("--deduplicated-out", cln_dedup_out, "Enriched pre-gate JSONL output");
    cln->add_option("--exclusions-dir", cln_excl_dir, "Write robots exclusion indexes (robots.<collection>.wcxi)");

    // bitext
    auto *bt = app.add_subcommand("bitext", "Sentence splitting, pair filtering, pivoting and TMX");
    bt->require_subcommand(1);
    auto *bt_split = bt->add_subcommand("split", "Split cleaned documents into identified sentences");
    std::string split_in, split_out = "-", split_srx;
    bt_split->add_option("-i,--in", split_in, "Cleaned JSONL")->required();
    bt_split->add_option("-o,--out", split_out, "Sentence JSONL output");
    bt_split->add_option("--srx", split_srx, "SRX rule file (default: config)");

    auto *bt_filter = bt->add_subcommand("filter", "Hard rules, scoring, threshold and dedup per language");
    std::vector<std::string> filter_pairs;
    std::string filter_dir = "bitext", filter_src = "eng";
    std::optional<double> filter_tau;
    bool filter_drop_unscored = false;
    bt_filter->add_option("--pairs", filter_pairs, "LANG=PATH pair TSV (English source)")->required();
    bt_filter->add_option("--src", filter_src, "Source (English) language code");
    bt_filter->add_option("--tau", filter_tau, "Score threshold (default: config pair_score)");
    bt_filter->add_flag("--drop-unscored", filter_drop_unscored, "Drop pairs without a lexicon score");
    bt_filter->add_option("-o,--out-dir", filter_dir, "Output directory");

    auto *bt_pivot = bt->add_subcommand("pivot", "Join English-centric pair sets into X-Y pairs");
    std::vector<std::string> pivot_pairs;
    std::string pivot_out = "-", pivot_src = "eng";
    std::size_t pivot_cap = 50;
    bt_pivot->add_option("--pairs", pivot_pairs, "LANG=PATH pair TSV (English source)")->required();
    bt_pivot->add_option("--src", pivot_src, "Pivot language code");
    bt_pivot->add_option("--fanout-cap", pivot_cap, "Maximum pairs per English sentence (0 = unlimited)");
    bt_pivot->add_option("-o,--out", pivot_out, "Pivot TSV output");

    auto *bt_tmx = bt->add_subcommand("tmx", "Pair TSV to TMX 1.4");
    std::string tmx_in, tmx_out = "-", tmx_src = "eng", tmx_trg;
    bt_tmx->add_option("-i,--in", tmx_in, "Pair TSV")->required();
    bt_tmx->add_option("--src", tmx_src, "Source language code");
    bt_tmx->add_option("--trg", tmx_trg, "Target language code")->required();
    bt_tmx->add_option("-o,--out", tmx_out, "TMX output");

    // analytics
    auto *st = app.add_subcommand("stats", "Descriptive corpus statistics");
    std::string st_in, st_csv;
    st->add_option("-i,--in", st_in, "Cleaned JSONL")->required();
    st->add_option("--csv", st_csv, "Write CSV report");

    auto *ng = app.add_subcommand("ngrams", "Most frequent n-grams");
    std::string ng_in, ng_lang, ng_stop, ng_csv;
    std::size_t ng_max = analytics::kMaxNgramOrder, ng_k = 20;
    ng->add_option("-i,--in", ng_in, "Cleaned JSONL")->required();
    ng->add_option("--lang", ng_lang, "Only documents in this language");
    ng->add_option("--stopwords", ng_stop, "Stopword file (default: config dir/<lang>.txt)");
    ng->add_option("--max-n", ng_max, "Largest n-gram order")->check(CLI::Range(1, 5));
    ng->add_option("-k,--top", ng_k, "Entries per order");
    ng->add_option("--csv", ng_csv, "CSV output (default stdout)");

    auto *dm = app.add_subcommand("domains", "Domain and TLD report");
    std::string dm_in, dm_csv;
    std::size_t dm_top = 20;
    dm->add_option("-i,--in", dm_in, "Cleaned JSONL")->required();
    dm->add_option("--top", dm_top, "Rows per table");
    dm->add_option("--csv", dm_csv, "Write CSV report");

    auto *ins = app.add_subcommand("inspect", "Stratified manual-inspection sheet");
    std::string ins_in, ins_lang, ins_strata, ins_out = "-";
    std::size_t ins_n = 50;
    ins->add_option("-i,--in", ins_in, "Cleaned JSONL")->required();
    ins->add_option("--lang", ins_lang, "Only documents in this language");
    ins->add_option("--strata", ins_strata, "TSV collection<TAB>stratum");
    ins->add_option("-n,--per-stratum", ins_n, "Documents per stratum");
    ins->add_option("-o,--out", ins_out, "TSV sheet output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        auto config = effective_config(g);
        const auto shards = static_cast<std::size_t>(config.shards);
        auto *log = log_stream(g);

        if (*cfg) {
            std::cout << pipeline::to_ini(config);
        } else if (*run) {
            if (!run_inputs.empty()) config.collections = {{run_collection, run_inputs}};
            if (!run_out.empty()) config.output_dir = run_out;
            if (config.collections.empty()) throw ConfigError("no inputs: pass WARC paths or configure collections");
            auto report = pipeline::run_pipeline(config, {g.resume, log});
            if (log) {
                for (const auto &s : report.stages) print_stage(s);
                for (const auto &[col, y] : report.collections)
                    *log << col << ": " << y.docs_out << " docs, " << y.chars_out << " chars from " << y.warc_bytes
                         << " WARC bytes (" << y.chars_per_byte() << " chars/byte)\n";
                for (const auto &w : report.warnings) *log << "warning: " << w << '\n';
            }
        } else if (*ing) {
            auto res = pipeline::load_resources(config);
            auto r = pipeline::ingest({{ing_collection, ing_inputs}}, res.trash ? &*res.trash : nullptr, shards);
            if (ing_out == "-") {
                for (const auto &c : r.captures) {
                    auto j = warc::to_json(c.capture);
                    j["collection"] = c.collection;
                    std::cout << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
                }
            } else {
                pipeline::write_captures_jsonl(ing_out, r.captures);
            }
            if (!ing_robots.empty()) pipeline::write_robots_jsonl(ing_robots, r.robots);
            if (log) {
                print_stage(r.ingest);
                print_stage(r.trash);
                for (const auto &w : r.warnings) *log << "warning: " << w << '\n';
            }
        } else if (*ext) {
            auto res = pipeline::load_resources(config);
            extract::ExtractContext ctx{res.mt ? &*res.mt : nullptr, &res.extractor, res.lid.get()};
            auto r = pipeline::extract_documents(pipeline::read_captures_jsonl(ext_in), ctx, shards);
            pipeline::write_extracted_jsonl(ext_out == "-" ? "/dev/stdout" : ext_out, r.docs);
            if (log) print_stage(r.report);
        } else if (*ded) {
            auto docs = pipeline::read_extracted_jsonl(ded_in);
            pipeline::StageReport lid_r, dedup_r;
            auto gated = pipeline::apply_lid_gate(std::move(docs), config.thresholds.gates(), config.stages.lid, lid_r);
            auto result = dedup::deduplicate(gated, shards, config.thresholds.jaccard);
            std::vector<extract::ExtractedDocument> kept;
            for (std::size_t i = 0; i < gated.size(); ++i) {
                if (result.keep[i] || !config.stages.dedup) kept.push_back(gated[i]);
            }
            pipeline::write_extracted_jsonl(ded_out == "-" ? "/dev/stdout" : ded_out, kept);
            if (!ded_sigs.empty()) {
                auto out = open_out(ded_sigs);
                dedup::write_signature_shard(out, result.signatures);
            }
            if (!ded_clusters.empty()) {
                auto out = open_out(ded_clusters);
                for (const auto &cl : result.clusters) {
                    nlohmann::json j = nlohmann::json::array();
                    for (auto i : cl) j.push_back(gated[i].url);
                    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
                }
            }
            if (log) {
                print_stage(lid_r);
                dedup_r.stage = "dedup";
                dedup_r.in = gated.size();
                dedup_r.out = kept.size();
                dedup_r.rejections["near_duplicate"] = gated.size() - kept.size();
                print_stage(dedup_r);
            }
        } else if (*cln) {
            auto res = pipeline::load_resources(config);
            auto docs = pipeline::enrich_documents(pipeline::read_extracted_jsonl(cln_in), *res.lid, shards);
            pipeline::sort_documents(docs);
            if (!cln_dedup_out.empty()) pipeline::write_jsonl(cln_dedup_out, docs);
            std::vector<pipeline::RobotsRecord> robots;
            if (!cln_robots.empty()) robots = pipeline::read_robots_jsonl(cln_robots);
            pipeline::StageReport report;
            auto exclusions = pipeline::build_exclusions(docs, robots);
            if (!cln_excl_dir.empty()) pipeline::write_exclusion_images(cln_excl_dir, exclusions);
            auto cleaned = pipeline::apply_clean_gates(docs, exclusions, res, config, report);
            pipeline::write_jsonl(cln_out == "-" ? "/dev/stdout" : cln_out, cleaned);
            if (log) print_stage(report);
        } else if (*bt_split) {
            auto splitter = config.resources.srx.empty() && split_srx.empty()
                                ? bitext::SrxSplitter()
                                : bitext::SrxSplitter::load(split_srx.empty() ? config.resources.srx : split_srx);
            std::vector<std::string> warnings;
            std::ostringstream out;
            for (const auto &d : pipeline::read_cleaned_jsonl(split_in)) {
                for (const auto &s : bitext::split_sentences(d.id, d.text, d.document_lang, splitter, &warnings))
                    out << bitext::to_json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
            }
            write_or_print(split_out, out.str());
            if (log) {
                std::set<std::string> seen(warnings.begin(), warnings.end());
                for (const auto &w : seen) *log << "warning: " << w << '\n';
            }
        } else if (*bt_filter) {
            auto res = pipeline::load_resources(config);
            bitext::LexiconScorer scorer;
            bitext::FilterOptions opts;
            opts.tau = filter_tau.value_or(config.thresholds.pair_score);
            opts.keep_unscored = !filter_drop_unscored;
            fs::create_directories(filter_dir);
            std::vector<bitext::PairCounts> rows;
            for (const auto &spec : filter_pairs) {
                auto [lang, path] = lang_path(spec);
                const auto lex_key = std::string(extract::language_part(lang));
                if (!config.resources.lexicons.empty()) {
                    auto lex = fs::path(config.resources.lexicons) / (lex_key + ".tsv");
                    if (fs::exists(lex)) scorer.add_lexicon(lex_key, bitext::Lexicon::load(lex.string()));
                }
                std::map<std::string, std::uint64_t> hard;
                auto result = bitext::filter_pairs(load_pairs(path, filter_src, lang), scorer, res.lid.get(), opts,
                                                   lang, &hard);
                const auto base = (fs::path(filter_dir) / (filter_src + "-" + lang)).string();
                {
                    auto out = open_out(base + ".tsv");
                    bitext::write_pair_tsv(out, result.pairs);
                }
                {
                    auto src = open_out(base + "." + bitext::try_map_lang_code(filter_src));
                    auto trg = open_out(base + "." + bitext::try_map_lang_code(lang));
                    bitext::emit_bitext(result.pairs, src, trg);
                }
                bitext::EmitStats es;
                write_file(base + ".tmx", bitext::emit_tmx(result.pairs, &es));
                rows.push_back(result.counts);
                if (log)
                    *log << lang << ": raw=" << result.counts.raw_pairs
                         << " filtered=" << result.counts.filtered_pairs << " tmx=" << result.counts.tmx_pairs
                         << '\n';
                if (log)
                    for (const auto &[rule, n] : hard) *log << "  " << rule << '=' << n << '\n';
            }
            write_file((fs::path(filter_dir) / "counts.csv").string(), bitext::counts_csv(rows));
        } else if (*bt_pivot) {
            std::vector<std::vector<bitext::SentencePair>> sets;
            for (const auto &spec : pivot_pairs) {
                auto [lang, path] = lang_path(spec);
                sets.push_back(load_pairs(path, pivot_src, lang));
            }
            auto pivoted = bitext::pivot(sets, pivot_cap);
            std::ostringstream out;
            for (const auto &p : pivoted) {
                auto clean = [](std::string s) {
                    for (auto &c : s) if (c == '\t' || c == '\n' || c == '\r') c = ' ';
                    return s;
                };
                auto prov = [](const bitext::SentenceRecord &r) {
                    return r.doc_id + ":" + std::to_string(r.paragraph_idx) + ":" + std::to_string(r.sentence_idx);
                };
                out << p.left.lang << '\t' << p.right.lang << '\t' << clean(p.left.text) << '\t'
                    << clean(p.right.text) << '\t' << prov(p.left) << '|' << prov(p.right) << '\n';
            }
            write_or_print(pivot_out, out.str());
            if (log) *log << "pivot: " << pivoted.size() << " pairs\n";
        } else if (*bt_tmx) {
            auto pairs = load_pairs(tmx_in, tmx_src, tmx_trg);
            bitext::EmitStats es;
            write_or_print(tmx_out, bitext::emit_tmx(pairs, &es));
            if (log && es.replaced) *log << "warning: " << es.replaced << " pairs had text replaced for encoding\n";
        } else if (*st) {
            std::ifstream in(st_in, std::ios::binary);
            if (!in) throw DataError("cannot open " + st_in);
            auto stats = analytics::compute_stats(in, config.thresholds.gates());
            std::cout << analytics::stats_text(stats);
            if (!st_csv.empty()) write_file(st_csv, analytics::stats_csv(stats));
        } else if (*ng) {
            analytics::NgramCounter counter(stopwords_for(config, ng_stop, ng_lang), ng_max);
            for (const auto &d : pipeline::read_cleaned_jsonl(ng_in)) {
                if (!ng_lang.empty() && extract::language_part(d.document_lang) != extract::language_part(ng_lang))
                    continue;
                counter.add_text(d.text);
            }
            write_or_print(ng_csv, analytics::ngrams_csv(counter.top(ng_k)));
        } else if (*dm) {
            if (config.resources.public_suffix.empty()) throw ConfigError("resources.public_suffix is required");
            auto psl = PublicSuffixList::load(config.resources.public_suffix);
            std::unordered_set<std::string> cctlds;
            if (!config.resources.country_tlds.empty()) cctlds = analytics::load_country_tlds(config.resources.country_tlds);
            std::vector<std::string> urls;
            for (const auto &d : pipeline::read_cleaned_jsonl(dm_in)) urls.push_back(d.url);
            auto report = analytics::domain_report(urls, psl, cctlds);
            std::cout << analytics::domain_report_text(report, dm_top);
            if (!dm_csv.empty()) write_file(dm_csv, analytics::domain_report_csv(report, dm_top));
        } else if (*ins) {
            std::vector<analytics::InspectionDoc> docs;
            for (auto &d : pipeline::read_cleaned_jsonl(ins_in)) {
                if (!ins_lang.empty() && extract::language_part(d.document_lang) != extract::language_part(ins_lang))
                    continue;
                docs.push_back({d.id, d.document_lang, d.collection, std::move(d.text)});
            }
            auto sample = analytics::inspection_sample(std::move(docs), load_strata(ins_strata), ins_n, config.seed,
                                                       ins_lang);
            write_or_print(ins_out, analytics::inspection_sheet(sample));
            if (log)
                for (const auto &w : sample.warnings) *log << "warning: " << w << '\n';
        }
        return 0;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DataError &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
