#include "webcorp/analytics/stats.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/utf8.hpp"

#include <istream>
#include <sstream>

namespace webcorp::analytics {

namespace {

double pct(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

void StatsAccumulator::add(const clean::CleanedDocument &doc) {
    ++docs_;
    chars_ += utf8::length(doc.text);
    bool cjk = clean::is_cjk_language(doc.document_lang);
    auto want = extract::language_part(doc.document_lang);
    auto segs = split(doc.text, '\n');
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        auto s = segs[i];
        if (s.empty()) continue;
        ++n;
        auto words = split_whitespace(s).size();
        words_ += words;
        bool is_short = cjk ? static_cast<double>(utf8::length(s)) < short_def_.cjk_chars_per_seg
                            : static_cast<double>(words) < short_def_.words_per_seg;
        if (is_short) ++short_segments_;
        if (i < doc.seg_langs.size() && extract::language_part(doc.seg_langs[i]) == want) ++lang_match_;
        distinct_.emplace(s);
    }
    segments_ += n;
    if (n > 25) ++long_docs_;
}

void StatsAccumulator::merge(const StatsAccumulator &o) {
    docs_ += o.docs_;
    segments_ += o.segments_;
    long_docs_ += o.long_docs_;
    short_segments_ += o.short_segments_;
    lang_match_ += o.lang_match_;
    chars_ += o.chars_;
    words_ += o.words_;
    distinct_.insert(o.distinct_.begin(), o.distinct_.end());
}

StatsRow StatsAccumulator::row() const {
    StatsRow r;
    r.doc_count = docs_;
    r.segment_count = segments_;
    r.unique_segment_pct = pct(distinct_.size(), segments_);
    r.docs_over_25_segments_pct = pct(long_docs_, docs_);
    r.short_segment_pct = pct(short_segments_, segments_);
    r.seg_lang_match_pct = pct(lang_match_, segments_);
    r.char_count = chars_;
    r.word_count = words_;
    return r;
}

void CorpusStatsBuilder::add(const clean::CleanedDocument &doc) {
    all_.add(doc);
    per_collection_.try_emplace(doc.collection, short_def_).first->second.add(doc);
}

void CorpusStatsBuilder::merge(const CorpusStatsBuilder &o) {
    all_.merge(o.all_);
    for (const auto &[name, acc] : o.per_collection_)
        per_collection_.try_emplace(name, short_def_).first->second.merge(acc);
    malformed_ += o.malformed_;
}

CorpusStats CorpusStatsBuilder::finish() const {
    if (all_.docs() == 0) throw Error("empty corpus");
    CorpusStats s;
    s.overall = all_.row();
    for (const auto &[name, acc] : per_collection_) s.per_collection[name] = acc.row();
    s.malformed_lines = malformed_;
    return s;
}

CorpusStats compute_stats(std::istream &jsonl, clean::Thresholds short_def) {
    CorpusStatsBuilder b(short_def);
    std::string line;
    while (std::getline(jsonl, line)) {
        if (trim(line).empty()) continue;
        try {
            b.add(clean::cleaned_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception &) {
            b.add_malformed();
        } catch (const DataError &) {
            b.add_malformed();
        }
    }
    return b.finish();
}

std::string stats_csv(const CorpusStats &stats) {
    std::ostringstream out;
    out << "scope,doc_count,segment_count,unique_segment_pct,docs_over_25_segments_pct,short_segment_pct,"
           "seg_lang_match_pct,char_count,word_count\n";
    auto row = [&](const std::string &scope, const StatsRow &r) {
        out << scope << ',' << r.doc_count << ',' << r.segment_count << ',' << r.unique_segment_pct << ','
            << r.docs_over_25_segments_pct << ',' << r.short_segment_pct << ',' << r.seg_lang_match_pct << ','
            << r.char_count << ',' << r.word_count << '\n';
    };
    row("all", stats.overall);
    for (const auto &[name, r] : stats.per_collection) row(name, r);
    return out.str();
}

std::string stats_text(const CorpusStats &stats) {
    std::ostringstream out;
    auto block = [&](const std::string &title, const StatsRow &r) {
        out << title << '\n'
            << "  documents                  " << r.doc_count << '\n'
            << "  segments                   " << r.segment_count << '\n'
            << "  unique segments            " << r.unique_segment_pct << " %\n"
            << "  docs over 25 segments      " << r.docs_over_25_segments_pct << " %\n"
            << "  short segments             " << r.short_segment_pct << " %\n"
            << "  segments in doc language   " << r.seg_lang_match_pct << " %\n"
            << "  characters                 " << r.char_count << '\n'
            << "  words                      " << r.word_count << '\n';
    };
    out << "# short segment: < 5 words, or < 10 characters for jpn/zho/kor (same definition as the cleaning gate)\n";
    block("all", stats.overall);
    for (const auto &[name, r] : stats.per_collection) block("collection " + name, r);
    if (stats.malformed_lines) out << "malformed lines skipped: " << stats.malformed_lines << '\n';
    return out.str();
}

} // namespace webcorp::analytics
