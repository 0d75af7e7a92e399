#pragma once

#include "webcorp/bitext/sentences.hpp"
#include "webcorp/extract/lid.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace webcorp::bitext {

/// English-centric pair: `src` is the English side.
struct SentencePair {
    SentenceRecord src;
    SentenceRecord trg;
    double score = -1.0;   // in [0,1] unless unscored
    bool unscored = true;

    bool operator==(const SentencePair &) const = default;
};

// ---------------------------------------------------------------- hard rules

enum class HardRule { identical, lang_mismatch, length_ratio, too_long };
std::string_view hard_rule_name(HardRule r);

struct HardRuleParams {
    double max_length_ratio = 6.0;
    std::size_t max_chars = 1024;
};

/// Applies the enabled rules in order: identical (after lowercasing), LID
/// mismatch, length ratio, maximum length. The minimal-length and fluency
/// rules are deliberately absent. The LID rule only checks a side whose
/// declared language the classifier knows; it is skipped without a
/// classifier.
std::optional<HardRule> hard_rules_filter(const SentencePair &pair, const extract::LanguageIdentifier *lid = nullptr,
                                          const HardRuleParams &params = {});

// ---------------------------------------------------------------- scoring

class PairScorer {
  public:
    virtual ~PairScorer() = default;
    /// nullopt when the scorer cannot judge this language pair.
    [[nodiscard]] virtual std::optional<double> score(const SentencePair &pair) const = 0;
};

/// Seed bilingual lexicon; entries are lowercased.
class Lexicon {
  public:
    void add(std::string_view src_word, std::string_view trg_word);
    /// TSV "source\ttarget" per line; '#' comments. Throws ConfigError.
    static Lexicon load(const std::string &path);

    [[nodiscard]] bool translates(const std::string &src_word, const std::unordered_set<std::string> &trg_words) const;
    [[nodiscard]] bool back_translates(const std::string &trg_word,
                                       const std::unordered_set<std::string> &src_words) const;
    [[nodiscard]] bool empty() const { return forward_.empty(); }

  private:
    std::unordered_map<std::string, std::vector<std::string>> forward_;
    std::unordered_map<std::string, std::vector<std::string>> backward_;
};

/// Lowercased tokens containing at least one letter, with leading and
/// trailing punctuation stripped.
std::vector<std::string> content_words(std::string_view text);

/// Mean of source coverage (source words with a translation on the target
/// side) and target coverage (the reverse). Lexicons are keyed by the
/// language part of the target code ("fin").
class LexiconScorer final : public PairScorer {
  public:
    void add_lexicon(const std::string &trg_lang, Lexicon lex);
    [[nodiscard]] std::optional<double> score(const SentencePair &pair) const override;

  private:
    std::map<std::string, Lexicon> lexicons_;
};

/// Fills score/unscored for every pair.
void score_pairs(std::vector<SentencePair> &pairs, const PairScorer &scorer);

// ---------------------------------------------------------------- filtering

/// One row of the per-language counts report (raw / filtered / TMX).
struct PairCounts {
    std::string lang;  // target language code
    std::uint64_t raw_pairs = 0;
    std::uint64_t raw_words = 0;       // English words
    std::uint64_t filtered_pairs = 0;
    std::uint64_t filtered_words = 0;
    std::uint64_t tmx_pairs = 0;
    std::uint64_t tmx_words = 0;

    bool operator==(const PairCounts &) const = default;
};

struct FilterOptions {
    double tau = 0.5;
    bool keep_unscored = true;  // unscored pairs bypass the threshold
};

struct FilterResult {
    std::vector<SentencePair> pairs;
    PairCounts counts;
};

/// trim + collapse whitespace; the dedup and pivot key normalization.
std::string normalize_pair_text(std::string_view s);

/// Drops score < tau, then keeps the first occurrence of each normalized
/// (src, trg) text pair. `lang` labels the counts row.
FilterResult filter_and_dedup(const std::vector<SentencePair> &pairs, const FilterOptions &opts = {},
                              const std::string &lang = "");

/// Hard rules, scoring, then filter_and_dedup. Pairs failing a hard rule
/// count as raw but never as filtered.
FilterResult filter_pairs(std::vector<SentencePair> pairs, const PairScorer &scorer,
                          const extract::LanguageIdentifier *lid = nullptr, const FilterOptions &opts = {},
                          const std::string &lang = "",
                          std::map<std::string, std::uint64_t> *hard_rejections = nullptr);

/// CSV with one row per language, then "total" and "median" rows.
std::string counts_csv(const std::vector<PairCounts> &rows);

// ---------------------------------------------------------------- pivoting

struct PivotPair {
    SentenceRecord left;   // language X
    SentenceRecord right;  // language Y, X < Y
    std::string via;       // normalized English text

    bool operator==(const PivotPair &) const = default;
    auto operator<=>(const PivotPair &o) const {
        return std::tie(via, left.lang, right.lang, left.text, right.text, left.doc_id, left.paragraph_idx,
                        left.sentence_idx, right.doc_id, right.paragraph_idx, right.sentence_idx) <=>
               std::tie(o.via, o.left.lang, o.right.lang, o.left.text, o.right.text, o.left.doc_id,
                        o.left.paragraph_idx, o.left.sentence_idx, o.right.doc_id, o.right.paragraph_idx,
                        o.right.sentence_idx);
    }
};

/// Joins English-centric pair sets on the normalized English text and emits
/// every cross-language (X, Y) combination with X < Y. At most `fanout_cap`
/// pairs are emitted per English key (0 = unlimited), taken in canonical
/// order. Output is sorted, so it does not depend on input order.
std::vector<PivotPair> pivot(const std::vector<std::vector<SentencePair>> &pair_sets, std::size_t fanout_cap = 50);

// ---------------------------------------------------------------- output

struct EmitStats {
    std::size_t lines = 0;
    std::size_t replaced = 0;  // pairs whose text had to be altered to encode
};

/// Two line-aligned files. Invalid UTF-8 becomes U+FFFD; embedded line
/// breaks and tabs become spaces.
EmitStats emit_bitext(const std::vector<SentencePair> &pairs, std::ostream &src_out, std::ostream &trg_out);

/// TMX 1.4 with srclang set to the two-letter English code. Scores and
/// sentence identifiers are carried as <prop> elements.
std::string emit_tmx(const std::vector<SentencePair> &pairs, EmitStats *stats = nullptr);

/// Parses a document produced by emit_tmx. Throws DataError.
std::vector<SentencePair> read_tmx(std::string_view xml);

/// "src\ttrg\tscore\tprovenance" lines. An empty or "-1" score means
/// unscored. Provenance is "doc:para:sent|doc:para:sent" (English side
/// first); either half may be empty. Throws DataError with the line number.
std::vector<SentencePair> read_pair_tsv(std::istream &in, const std::string &src_lang, const std::string &trg_lang);
void write_pair_tsv(std::ostream &out, const std::vector<SentencePair> &pairs);

} // namespace webcorp::bitext
