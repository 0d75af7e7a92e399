#include "webcorp/bitext/pairs.hpp"

#include "webcorp/bitext/lang_codes.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/unicode.hpp"
#include "webcorp/common/utf8.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace webcorp::bitext {

namespace {

std::string format_score(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::uint64_t english_words(const SentencePair &p) { return split_whitespace(p.src.text).size(); }

std::string sentence_ref(const SentenceRecord &r) {
    if (r.doc_id.empty()) return "";
    return r.doc_id + ":" + std::to_string(r.paragraph_idx) + ":" + std::to_string(r.sentence_idx);
}

// "doc:para:sent"; the doc id may itself contain ':'.
void parse_sentence_ref(std::string_view ref, SentenceRecord &r) {
    ref = trim(ref);
    if (ref.empty()) return;
    auto b = ref.rfind(':');
    auto a = b == std::string_view::npos || b == 0 ? std::string_view::npos : ref.rfind(':', b - 1);
    if (a == std::string_view::npos) throw DataError("bad sentence reference '" + std::string(ref) + "'");
    std::size_t para = 0, sent = 0;
    auto ps = ref.substr(a + 1, b - a - 1);
    auto ss = ref.substr(b + 1);
    if (std::from_chars(ps.data(), ps.data() + ps.size(), para).ptr != ps.data() + ps.size() || ps.empty() ||
        std::from_chars(ss.data(), ss.data() + ss.size(), sent).ptr != ss.data() + ss.size() || ss.empty())
        throw DataError("bad sentence reference '" + std::string(ref) + "'");
    r.doc_id = std::string(ref.substr(0, a));
    r.paragraph_idx = para;
    r.sentence_idx = sent;
}

// Valid UTF-8 without XML-illegal control characters.
std::string xml_safe(std::string_view s, bool &changed) {
    bool lossy = false;
    auto cps = utf8::decode(s, &lossy);
    std::string out;
    out.reserve(s.size());
    for (char32_t c : cps) {
        bool legal = c == 0x9 || c == 0xA || c == 0xD || (c >= 0x20 && c != 0xFFFE && c != 0xFFFF);
        if (!legal) {
            c = utf8::kReplacement;
            lossy = true;
        }
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: utf8::append(out, c);
        }
    }
    changed = changed || lossy;
    return out;
}

std::string line_safe(std::string_view s, bool &changed) {
    bool lossy = false;
    std::string out = utf8::sanitize(s, &lossy);
    for (auto &ch : out) {
        if (ch == '\n' || ch == '\r' || ch == '\t') {
            ch = ' ';
            lossy = true;
        }
    }
    changed = changed || lossy;
    return out;
}

} // namespace

std::string_view hard_rule_name(HardRule r) {
    switch (r) {
    case HardRule::identical: return "identical";
    case HardRule::lang_mismatch: return "lang_mismatch";
    case HardRule::length_ratio: return "length_ratio";
    case HardRule::too_long: return "too_long";
    }
    return "unknown";
}

std::optional<HardRule> hard_rules_filter(const SentencePair &pair, const extract::LanguageIdentifier *lid,
                                          const HardRuleParams &params) {
    if (unicode::to_lower(pair.src.text) == unicode::to_lower(pair.trg.text)) return HardRule::identical;

    if (lid) {
        auto mismatched = [&](const SentenceRecord &r) {
            auto declared = extract::language_part(r.lang);
            bool known = std::any_of(lid->labels().begin(), lid->labels().end(),
                                     [&](const std::string &l) { return extract::language_part(l) == declared; });
            if (!known || trim(r.text).empty()) return false;
            return extract::language_part(lid->predict(r.text).lang) != declared;
        };
        if (mismatched(pair.src) || mismatched(pair.trg)) return HardRule::lang_mismatch;
    }

    auto a = utf8::length(pair.src.text);
    auto b = utf8::length(pair.trg.text);
    auto shorter = std::min(a, b), longer = std::max(a, b);
    if (shorter == 0 || static_cast<double>(longer) > params.max_length_ratio * static_cast<double>(shorter))
        return HardRule::length_ratio;
    if (longer > params.max_chars) return HardRule::too_long;
    return std::nullopt;
}

void Lexicon::add(std::string_view src_word, std::string_view trg_word) {
    auto s = unicode::to_lower(trim(src_word));
    auto t = unicode::to_lower(trim(trg_word));
    if (s.empty() || t.empty()) return;
    forward_[s].push_back(t);
    backward_[t].push_back(s);
}

Lexicon Lexicon::load(const std::string &path) {
    std::vector<std::string> lines;
    try {
        lines = read_list_file(path);
    } catch (const Error &e) {
        throw ConfigError(e.what());
    }
    Lexicon lex;
    for (const auto &line : lines) {
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ConfigError("lexicon line without tab in " + path + ": " + line);
        lex.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
    }
    return lex;
}

bool Lexicon::translates(const std::string &src_word, const std::unordered_set<std::string> &trg_words) const {
    auto it = forward_.find(src_word);
    if (it == forward_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const auto &t) { return trg_words.count(t) > 0; });
}

bool Lexicon::back_translates(const std::string &trg_word, const std::unordered_set<std::string> &src_words) const {
    auto it = backward_.find(trg_word);
    if (it == backward_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const auto &s) { return src_words.count(s) > 0; });
}

std::vector<std::string> content_words(std::string_view text) {
    std::vector<std::string> out;
    for (auto tok : split_whitespace(text)) {
        auto cps = utf8::decode(tok);
        std::size_t b = 0, e = cps.size();
        while (b < e && !unicode::is_letter(cps[b]) && !unicode::is_digit(cps[b])) ++b;
        while (e > b && !unicode::is_letter(cps[e - 1]) && !unicode::is_digit(cps[e - 1])) --e;
        std::u32string word(cps.begin() + static_cast<std::ptrdiff_t>(b), cps.begin() + static_cast<std::ptrdiff_t>(e));
        if (std::none_of(word.begin(), word.end(), unicode::is_letter)) continue;
        for (auto &c : word) c = unicode::to_lower(c);
        out.push_back(utf8::encode(word));
    }
    return out;
}

void LexiconScorer::add_lexicon(const std::string &trg_lang, Lexicon lex) {
    lexicons_[std::string(extract::language_part(trg_lang))] = std::move(lex);
}

std::optional<double> LexiconScorer::score(const SentencePair &pair) const {
    auto it = lexicons_.find(std::string(extract::language_part(pair.trg.lang)));
    if (it == lexicons_.end()) return std::nullopt;
    const auto &lex = it->second;
    auto src = content_words(pair.src.text);
    auto trg = content_words(pair.trg.text);
    if (src.empty() || trg.empty()) return 0.0;
    std::unordered_set<std::string> src_set(src.begin(), src.end());
    std::unordered_set<std::string> trg_set(trg.begin(), trg.end());
    double s = 0, t = 0;
    for (const auto &w : src) s += lex.translates(w, trg_set) ? 1 : 0;
    for (const auto &w : trg) t += lex.back_translates(w, src_set) ? 1 : 0;
    return (s / static_cast<double>(src.size()) + t / static_cast<double>(trg.size())) / 2.0;
}

void score_pairs(std::vector<SentencePair> &pairs, const PairScorer &scorer) {
    for (auto &p : pairs) {
        auto s = scorer.score(p);
        p.unscored = !s.has_value();
        p.score = s.value_or(-1.0);
    }
}

std::string normalize_pair_text(std::string_view s) { return collapse_whitespace(s); }

namespace {

template <typename Rejected>
FilterResult filter_impl(const std::vector<SentencePair> &pairs, const FilterOptions &opts, const std::string &lang,
                         Rejected rejected) {
    FilterResult r;
    r.counts.lang = lang;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto &p = pairs[i];
        r.counts.raw_pairs += 1;
        r.counts.raw_words += english_words(p);
        if (rejected(i)) continue;
        bool pass = p.unscored ? opts.keep_unscored : p.score >= opts.tau;
        if (!pass) continue;
        r.counts.filtered_pairs += 1;
        r.counts.filtered_words += english_words(p);
        auto key = normalize_pair_text(p.src.text);
        key.push_back('\t');
        key += normalize_pair_text(p.trg.text);
        if (!seen.insert(std::move(key)).second) continue;
        r.counts.tmx_pairs += 1;
        r.counts.tmx_words += english_words(p);
        r.pairs.push_back(p);
    }
    return r;
}

} // namespace

FilterResult filter_and_dedup(const std::vector<SentencePair> &pairs, const FilterOptions &opts,
                              const std::string &lang) {
    return filter_impl(pairs, opts, lang, [](std::size_t) { return false; });
}

FilterResult filter_pairs(std::vector<SentencePair> pairs, const PairScorer &scorer,
                          const extract::LanguageIdentifier *lid, const FilterOptions &opts, const std::string &lang,
                          std::map<std::string, std::uint64_t> *hard_rejections) {
    std::vector<bool> rejected(pairs.size(), false);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (auto rule = hard_rules_filter(pairs[i], lid)) {
            rejected[i] = true;
            if (hard_rejections) ++(*hard_rejections)[std::string(hard_rule_name(*rule))];
        }
    }
    score_pairs(pairs, scorer);
    return filter_impl(pairs, opts, lang, [&](std::size_t i) { return rejected[i]; });
}

std::string counts_csv(const std::vector<PairCounts> &rows_in) {
    auto rows = rows_in;
    std::sort(rows.begin(), rows.end(), [](const PairCounts &a, const PairCounts &b) {
        return std::tie(a.tmx_pairs, a.lang) < std::tie(b.tmx_pairs, b.lang);
    });
    std::ostringstream out;
    out << "language,raw_pairs,raw_en_words,filtered_pairs,filtered_en_words,tmx_pairs,tmx_en_words\n";
    PairCounts total;
    total.lang = "total";
    for (const auto &r : rows) {
        out << r.lang << ',' << r.raw_pairs << ',' << r.raw_words << ',' << r.filtered_pairs << ','
            << r.filtered_words << ',' << r.tmx_pairs << ',' << r.tmx_words << '\n';
        total.raw_pairs += r.raw_pairs;
        total.raw_words += r.raw_words;
        total.filtered_pairs += r.filtered_pairs;
        total.filtered_words += r.filtered_words;
        total.tmx_pairs += r.tmx_pairs;
        total.tmx_words += r.tmx_words;
    }
    out << "total," << total.raw_pairs << ',' << total.raw_words << ',' << total.filtered_pairs << ','
        << total.filtered_words << ',' << total.tmx_pairs << ',' << total.tmx_words << '\n';
    auto median = [&](auto field) {
        std::vector<std::uint64_t> v;
        for (const auto &r : rows) v.push_back(r.*field);
        if (v.empty()) return std::string("0");
        std::sort(v.begin(), v.end());
        auto n = v.size();
        if (n % 2) return std::to_string(v[n / 2]);
        return format_score((static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0);
    };
    out << "median," << median(&PairCounts::raw_pairs) << ',' << median(&PairCounts::raw_words) << ','
        << median(&PairCounts::filtered_pairs) << ',' << median(&PairCounts::filtered_words) << ','
        << median(&PairCounts::tmx_pairs) << ',' << median(&PairCounts::tmx_words) << '\n';
    return out.str();
}

std::vector<PivotPair> pivot(const std::vector<std::vector<SentencePair>> &pair_sets, std::size_t fanout_cap) {
    // English key -> language -> target sentences
    std::map<std::string, std::map<std::string, std::vector<SentenceRecord>>> groups;
    for (const auto &set : pair_sets) {
        for (const auto &p : set) groups[normalize_pair_text(p.src.text)][p.trg.lang].push_back(p.trg);
    }
    auto record_less = [](const SentenceRecord &a, const SentenceRecord &b) {
        return std::tie(a.text, a.doc_id, a.paragraph_idx, a.sentence_idx) <
               std::tie(b.text, b.doc_id, b.paragraph_idx, b.sentence_idx);
    };
    std::vector<PivotPair> out;
    for (auto &[key, by_lang] : groups) {
        if (by_lang.size() < 2) continue;
        for (auto &[_, recs] : by_lang) std::sort(recs.begin(), recs.end(), record_less);
        std::size_t emitted = 0;
        bool full = false;
        for (auto x = by_lang.begin(); x != by_lang.end() && !full; ++x) {
            for (auto y = std::next(x); y != by_lang.end() && !full; ++y) {
                for (const auto &l : x->second) {
                    for (const auto &r : y->second) {
                        if (fanout_cap && emitted == fanout_cap) {
                            full = true;
                            break;
                        }
                        out.push_back({l, r, key});
                        ++emitted;
                    }
                    if (full) break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

EmitStats emit_bitext(const std::vector<SentencePair> &pairs, std::ostream &src_out, std::ostream &trg_out) {
    EmitStats st;
    for (const auto &p : pairs) {
        bool changed = false;
        src_out << line_safe(p.src.text, changed) << '\n';
        trg_out << line_safe(p.trg.text, changed) << '\n';
        ++st.lines;
        if (changed) ++st.replaced;
    }
    return st;
}

std::string emit_tmx(const std::vector<SentencePair> &pairs, EmitStats *stats) {
    EmitStats st;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<tmx version=\"1.4\">\n"
        << "  <header creationtool=\"webcorp\" creationtoolversion=\"1\" segtype=\"sentence\" o-tmf=\"none\" "
           "adminlang=\"en\" srclang=\"en\" datatype=\"plaintext\"/>\n"
        << "  <body>\n";
    for (const auto &p : pairs) {
        bool changed = false;
        auto two = [](const std::string &lang) {
            auto t = try_map_lang_code(lang);
            return t.empty() ? std::string(extract::language_part(lang)) : t;
        };
        out << "    <tu tuid=\"" << (st.lines + 1) << "\">\n";
        if (p.unscored)
            out << "      <prop type=\"x-unscored\">true</prop>\n";
        else
            out << "      <prop type=\"score\">" << format_score(p.score) << "</prop>\n";
        out << "      <prop type=\"x-src-lang\">" << xml_safe(p.src.lang, changed) << "</prop>\n"
            << "      <prop type=\"x-trg-lang\">" << xml_safe(p.trg.lang, changed) << "</prop>\n";
        if (auto ref = sentence_ref(p.src); !ref.empty())
            out << "      <prop type=\"x-src-id\">" << xml_safe(ref, changed) << "</prop>\n";
        if (auto ref = sentence_ref(p.trg); !ref.empty())
            out << "      <prop type=\"x-trg-id\">" << xml_safe(ref, changed) << "</prop>\n";
        out << "      <tuv xml:lang=\"" << two(p.src.lang) << "\"><seg>" << xml_safe(p.src.text, changed)
            << "</seg></tuv>\n"
            << "      <tuv xml:lang=\"" << two(p.trg.lang) << "\"><seg>" << xml_safe(p.trg.text, changed)
            << "</seg></tuv>\n"
            << "    </tu>\n";
        ++st.lines;
        if (changed) ++st.replaced;
    }
    out << "  </body>\n</tmx>\n";
    if (stats) *stats = st;
    return out.str();
}

std::vector<SentencePair> read_tmx(std::string_view xml) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error &e) {
        throw DataError(std::string("malformed TMX: ") + e.what());
    }
    auto body = tree.get_child_optional("tmx.body");
    if (!body) throw DataError("malformed TMX: missing tmx/body");
    std::vector<SentencePair> out;
    for (const auto &[tag, tu] : *body) {
        if (tag != "tu") continue;
        SentencePair p;
        std::vector<std::pair<std::string, std::string>> tuvs;
        for (const auto &[ctag, child] : tu) {
            if (ctag == "prop") {
                auto type = child.get<std::string>("<xmlattr>.type", "");
                auto value = child.get_value<std::string>();
                if (type == "score") {
                    auto v = parse_double(value);
                    if (!v) throw DataError("malformed TMX: bad score '" + value + "'");
                    p.score = *v;
                    p.unscored = false;
                } else if (type == "x-src-lang") {
                    p.src.lang = value;
                } else if (type == "x-trg-lang") {
                    p.trg.lang = value;
                } else if (type == "x-src-id") {
                    parse_sentence_ref(value, p.src);
                } else if (type == "x-trg-id") {
                    parse_sentence_ref(value, p.trg);
                }
            } else if (ctag == "tuv") {
                tuvs.emplace_back(child.get<std::string>("<xmlattr>.xml:lang", ""), child.get<std::string>("seg", ""));
            }
        }
        if (tuvs.size() != 2) throw DataError("malformed TMX: translation unit without two variants");
        p.src.text = tuvs[0].second;
        p.trg.text = tuvs[1].second;
        if (p.src.lang.empty()) p.src.lang = tuvs[0].first;
        if (p.trg.lang.empty()) p.trg.lang = tuvs[1].first;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<SentencePair> read_pair_tsv(std::istream &in, const std::string &src_lang, const std::string &trg_lang) {
    std::vector<SentencePair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split(line, '\t');
        if (f.size() < 2 || f.size() > 4)
            throw DataError("pair TSV line " + std::to_string(lineno) + ": expected 2-4 tab-separated fields");
        SentencePair p;
        p.src.lang = src_lang;
        p.trg.lang = trg_lang;
        p.src.text = std::string(f[0]);
        p.trg.text = std::string(f[1]);
        if (f.size() >= 3 && !trim(f[2]).empty() && trim(f[2]) != "-1") {
            auto v = parse_double(f[2]);
            if (!v || *v < 0.0 || *v > 1.0)
                throw DataError("pair TSV line " + std::to_string(lineno) + ": bad score '" + std::string(f[2]) + "'");
            p.score = *v;
            p.unscored = false;
        }
        if (f.size() == 4 && !trim(f[3]).empty()) {
            auto bar = f[3].find('|');
            try {
                parse_sentence_ref(f[3].substr(0, bar), p.src);
                if (bar != std::string_view::npos) parse_sentence_ref(f[3].substr(bar + 1), p.trg);
            } catch (const DataError &e) {
                throw DataError("pair TSV line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

void write_pair_tsv(std::ostream &out, const std::vector<SentencePair> &pairs) {
    for (const auto &p : pairs) {
        bool changed = false;
        out << line_safe(p.src.text, changed) << '\t' << line_safe(p.trg.text, changed) << '\t'
            << (p.unscored ? std::string("-1") : format_score(p.score)) << '\t' << sentence_ref(p.src) << '|'
            << sentence_ref(p.trg) << '\n';
    }
}

} // namespace webcorp::bitext
