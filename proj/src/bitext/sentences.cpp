#include "webcorp/bitext/sentences.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <sstream>

namespace webcorp::bitext {

nlohmann::ordered_json to_json(const SentenceRecord &s) {
    nlohmann::ordered_json j;
    j["doc_id"] = s.doc_id;
    j["paragraph_idx"] = s.paragraph_idx;
    j["sentence_idx"] = s.sentence_idx;
    j["lang"] = s.lang;
    j["text"] = s.text;
    return j;
}

SentenceRecord sentence_from_json(const nlohmann::json &j) {
    try {
        return {j.at("doc_id").get<std::string>(), j.at("paragraph_idx").get<std::size_t>(),
                j.at("sentence_idx").get<std::size_t>(), j.at("lang").get<std::string>(),
                j.at("text").get<std::string>()};
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("bad sentence record: ") + e.what());
    }
}

std::vector<SrxRule> SrxSplitter::default_rules() {
    return {
        {false,
         R"(\b(?:Mr|Mrs|Ms|Dr|Prof|Sr|Jr|St|Mt|vs|etc|approx|Inc|Ltd|Co|Corp|No|Nr|Fig|Vol|pp|ca|cf|e\.g|i\.e|z\.B|bzw|usw|Mme|Mlle)\.)",
         R"(\s)"},
        // single initials: "A. Smith"
        {false, R"(\b[A-Z]\.)", R"(\s)"},
        {true, R"((?:[.!?]|…)+(?:["')\]]|»|”|’)*)", R"(\s)"},
        {true, R"((?:。|！|？)+(?:」|』|）|”)*)", ""},
    };
}

std::vector<SrxSplitter::Compiled> SrxSplitter::compile(const std::vector<SrxRule> &rules) {
    std::vector<Compiled> out;
    for (const auto &r : rules) {
        std::string pat = "(?:" + r.before + ")";
        if (!r.after.empty()) pat += "(?=" + r.after + ")";
        try {
            out.push_back({r.is_break, std::regex(pat, std::regex::ECMAScript)});
        } catch (const std::regex_error &e) {
            throw ConfigError("bad segmentation rule '" + pat + "': " + e.what());
        }
    }
    return out;
}

SrxSplitter::SrxSplitter() : defaults_(compile(default_rules())) {}

void SrxSplitter::add_language(const std::string &lang_pattern, std::vector<SrxRule> rules) {
    try {
        maps_.push_back({std::regex(lang_pattern, std::regex::ECMAScript), lang_pattern, compile(rules)});
    } catch (const std::regex_error &e) {
        throw ConfigError("bad language pattern '" + lang_pattern + "': " + e.what());
    }
}

SrxSplitter SrxSplitter::parse(std::string_view srx_xml) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(srx_xml)};
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error &e) {
        throw ConfigError(std::string("malformed SRX: ") + e.what());
    }
    const auto *body = tree.get_child_optional("srx.body").get_ptr();
    if (!body) throw ConfigError("malformed SRX: missing srx/body");

    std::map<std::string, std::vector<SrxRule>> named;
    if (auto lr = body->get_child_optional("languagerules")) {
        for (const auto &[tag, node] : *lr) {
            if (tag != "languagerule") continue;
            auto name = node.get<std::string>("<xmlattr>.languagerulename", "");
            auto &rules = named[name];
            for (const auto &[rtag, rnode] : node) {
                if (rtag != "rule") continue;
                SrxRule r;
                r.is_break = rnode.get<std::string>("<xmlattr>.break", "yes") != "no";
                r.before = rnode.get<std::string>("beforebreak", "");
                r.after = rnode.get<std::string>("afterbreak", "");
                rules.push_back(std::move(r));
            }
        }
    }
    SrxSplitter s;
    if (auto mr = body->get_child_optional("maprules")) {
        for (const auto &[tag, node] : *mr) {
            if (tag != "languagemap") continue;
            auto pattern = node.get<std::string>("<xmlattr>.languagepattern", "");
            auto name = node.get<std::string>("<xmlattr>.languagerulename", "");
            auto it = named.find(name);
            if (it == named.end()) throw ConfigError("SRX map refers to unknown rule set '" + name + "'");
            s.add_language(pattern, it->second);
        }
    }
    return s;
}

SrxSplitter SrxSplitter::load(const std::string &path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error &e) {
        throw ConfigError(e.what());
    }
    return parse(text);
}

std::vector<std::string> SrxSplitter::apply(std::string_view paragraph, const std::vector<Compiled> &rules) const {
    std::string text(paragraph);
    // position -> break?; the first rule to reach a position decides it
    std::map<std::size_t, bool> decided;
    for (const auto &rule : rules) {
        for (auto it = std::sregex_iterator(text.begin(), text.end(), rule.pattern); it != std::sregex_iterator();
             ++it) {
            auto end = static_cast<std::size_t>(it->position(0) + it->length(0));
            if (end == 0 || end >= text.size()) continue;
            decided.try_emplace(end, rule.is_break);
        }
    }
    std::vector<std::string> out;
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
        auto piece = trim(std::string_view(text).substr(start, end - start));
        if (!piece.empty()) out.emplace_back(piece);
        start = end;
    };
    for (auto [pos, brk] : decided) {
        if (brk) emit(pos);
    }
    emit(text.size());
    return out;
}

std::vector<std::string> SrxSplitter::split(std::string_view paragraph, std::string_view lang,
                                            std::vector<std::string> *warnings) const {
    std::vector<Compiled> rules;
    const std::string code(lang);
    for (const auto &m : maps_) {
        if (std::regex_match(code, m.lang)) rules.insert(rules.end(), m.rules.begin(), m.rules.end());
    }
    if (rules.empty()) {
        if (warnings && !maps_.empty()) warnings->push_back("no segmentation rules for '" + code + "', using defaults");
        return apply(paragraph, defaults_);
    }
    return apply(paragraph, rules);
}

std::vector<SentenceRecord> split_sentences(const std::string &doc_id, std::string_view text,
                                            const std::string &lang, const SentenceSplitter &splitter,
                                            std::vector<std::string> *warnings) {
    std::vector<SentenceRecord> out;
    std::size_t para = 0;
    for (auto line : split(text, '\n')) {
        if (trim(line).empty()) continue;
        std::size_t idx = 0;
        for (auto &s : splitter.split(line, lang, warnings)) {
            out.push_back({doc_id, para, idx++, lang, std::move(s)});
        }
        if (idx > 0) ++para;
    }
    return out;
}

} // namespace webcorp::bitext
