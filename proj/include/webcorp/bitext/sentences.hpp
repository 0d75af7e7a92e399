#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace webcorp::bitext {

/// A sentence with identifiers that stay attached to it downstream.
struct SentenceRecord {
    std::string doc_id;
    std::size_t paragraph_idx = 0;
    std::size_t sentence_idx = 0;
    std::string lang;
    std::string text;

    bool operator==(const SentenceRecord &) const = default;
};

nlohmann::ordered_json to_json(const SentenceRecord &s);
SentenceRecord sentence_from_json(const nlohmann::json &j);

/// Splits one paragraph into sentences. Implementations return trimmed,
/// non-empty pieces.
class SentenceSplitter {
  public:
    virtual ~SentenceSplitter() = default;
    [[nodiscard]] virtual std::vector<std::string> split(std::string_view paragraph, std::string_view lang,
                                                         std::vector<std::string> *warnings = nullptr) const = 0;
};

/// One SRX rule: a break (or no-break) applies between a text matching
/// `before` and one matching `after`.
struct SrxRule {
    bool is_break = true;
    std::string before;
    std::string after;
};

/// SRX-style splitter. A position is a break iff the first rule (in file
/// order) whose before/after pair matches there is a break rule. Rules are
/// ECMAScript regexes; `before` is matched as a search over the paragraph
/// and `after` as a lookahead from the end of each match.
class SrxSplitter final : public SentenceSplitter {
  public:
    /// Default rules only: abbreviation no-breaks, then terminal punctuation
    /// (optionally followed by closing quotes or brackets) before whitespace,
    /// and CJK full-width terminators anywhere.
    SrxSplitter();

    /// Reads an SRX 2.0 document (languagerules + maprules). Throws
    /// webcorp::ConfigError on malformed input.
    static SrxSplitter load(const std::string &path);
    static SrxSplitter parse(std::string_view srx_xml);

    static std::vector<SrxRule> default_rules();

    /// Adds a rule set used for languages whose code matches `lang_pattern`
    /// (regex over the full code, e.g. "fin.*"). Earlier maps win.
    void add_language(const std::string &lang_pattern, std::vector<SrxRule> rules);

    [[nodiscard]] std::vector<std::string> split(std::string_view paragraph, std::string_view lang,
                                                 std::vector<std::string> *warnings = nullptr) const override;

  private:
    struct Compiled {
        bool is_break;
        std::regex pattern;
    };
    struct LanguageMap {
        std::regex lang;
        std::string name;
        std::vector<Compiled> rules;
    };
    static std::vector<Compiled> compile(const std::vector<SrxRule> &rules);
    [[nodiscard]] std::vector<std::string> apply(std::string_view paragraph, const std::vector<Compiled> &rules) const;

    std::vector<Compiled> defaults_;
    std::vector<LanguageMap> maps_;
};

/// Paragraphs are the '\n'-separated lines of `text`. Indices are dense:
/// empty paragraphs are skipped without consuming an index.
std::vector<SentenceRecord> split_sentences(const std::string &doc_id, std::string_view text,
                                            const std::string &lang, const SentenceSplitter &splitter,
                                            std::vector<std::string> *warnings = nullptr);

} // namespace webcorp::bitext
