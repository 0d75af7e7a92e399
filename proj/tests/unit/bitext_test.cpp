#include "text_gen.hpp"

#include "webcorp/bitext/lang_codes.hpp"
#include "webcorp/bitext/pairs.hpp"
#include "webcorp/bitext/sentences.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/extract/lid.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace webcorp;
using namespace webcorp::bitext;

namespace {

SentencePair pair_of(const std::string &en, const std::string &other, const std::string &lang = "fin",
                       double score = -1.0, std::size_t id = 0) {
    SentencePair p;
    p.src = {"d" + std::to_string(id), 0, id, "eng", en};
    p.trg = {"e" + std::to_string(id), 0, id, lang, other};
    p.score = score;
    p.unscored = score < 0;
    return p;
}

class FixedScorer final : public PairScorer {
  public:
    [[nodiscard]] std::optional<double> score(const SentencePair &p) const override {
        if (p.trg.lang == "xxx") return std::nullopt;
        return p.score;
    }
};

std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// Brute-force oracle: every cross-language combination over a shared key.
std::set<std::tuple<std::string, std::string, std::string, std::string, std::string>>
brute_pivot(const std::vector<std::vector<SentencePair>> &sets) {
    std::set<std::tuple<std::string, std::string, std::string, std::string, std::string>> out;
    std::vector<SentencePair> all;
    for (const auto &s : sets) all.insert(all.end(), s.begin(), s.end());
    for (const auto &a : all) {
        for (const auto &b : all) {
            if (a.trg.lang >= b.trg.lang) continue;
            if (normalize_pair_text(a.src.text) != normalize_pair_text(b.src.text)) continue;
            out.emplace(normalize_pair_text(a.src.text), a.trg.lang, a.trg.text, b.trg.lang, b.trg.text);
        }
    }
    return out;
}

} // namespace

TEST_SUITE("bitext") {
    TEST_CASE("default splitter honours the abbreviation list") {
        SrxSplitter s;
        auto out = s.split("A. Smith arrived. He left.", "eng");
        CHECK(out == std::vector<std::string>{"A. Smith arrived.", "He left."});
        CHECK(s.split("Dr. Who came. \"Really?\" she asked.", "eng") ==
              std::vector<std::string>{"Dr. Who came.", "\"Really?\"", "she asked."});
        CHECK(s.split("no terminal punctuation", "eng") == std::vector<std::string>{"no terminal punctuation"});
        CHECK(s.split("今日は晴れ。明日は雨。", "jpn") == std::vector<std::string>{"今日は晴れ。", "明日は雨。"});
        CHECK(s.split("   ", "eng").empty());
    }

    TEST_CASE("sentence identifiers are dense") {
        SrxSplitter s;
        auto one = split_sentences("d", "Only one sentence here.", "eng", s);
        REQUIRE(one.size() == 1);
        CHECK(one[0].paragraph_idx == 0);
        CHECK(one[0].sentence_idx == 0);

        auto four = split_sentences("d", "One here. Two here.\n\n  \nThree here. Four here.", "eng", s);
        REQUIRE(four.size() == 4);
        std::vector<std::pair<std::size_t, std::size_t>> ids;
        for (const auto &r : four) ids.emplace_back(r.paragraph_idx, r.sentence_idx);
        CHECK(ids == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
        CHECK(four[3].text == "Four here.");
        CHECK(four[3].doc_id == "d");
        CHECK(sentence_from_json(nlohmann::json::parse(to_json(four[2]).dump())) == four[2]);
    }

    TEST_CASE("SRX file rules and fallback warning") {
        const char *srx = R"(<?xml version="1.0"?>
<srx version="2.0"><header segmentsubflows="yes"/><body>
<languagerules>
  <languagerule languagerulename="Finnish">
    <rule break="no"><beforebreak>\d\.</beforebreak><afterbreak>\s+[a-z]</afterbreak></rule>
    <rule break="yes"><beforebreak>\.</beforebreak><afterbreak>\s</afterbreak></rule>
  </languagerule>
</languagerules>
<maprules><languagemap languagepattern="fin.*" languagerulename="Finnish"/></maprules>
</body></srx>)";
        auto s = SrxSplitter::parse(srx);
        CHECK(s.split("Se oli 5. kerta. Hyvä.", "fin") == std::vector<std::string>{"Se oli 5. kerta.", "Hyvä."});
        std::vector<std::string> warnings;
        CHECK(s.split("A b. C d.", "eng", &warnings).size() == 2);
        CHECK(warnings.size() == 1);
        CHECK_THROWS_AS(SrxSplitter::parse("<srx><body>"), ConfigError);
        CHECK_THROWS_AS(SrxSplitter::parse(R"(<srx><body><maprules><languagemap languagepattern=".*" languagerulename="nope"/></maprules></body></srx>)"),
                        ConfigError);

        auto bundled = SrxSplitter::load(testing::resource_dir() + "/srx/default.srx");
        CHECK(bundled.split("Hän tuli 3. päivänä. Sitten lähti.", "fin").size() == 2);
        CHECK(bundled.split("It rained. Then it stopped!", "eng").size() == 2);
    }

    TEST_CASE("language code mapping") {
        CHECK(map_lang_code("fin") == "fi");
        CHECK(map_lang_code("eng") == "en");
        CHECK(map_lang_code("eng_Latn") == "en");
        CHECK(map_lang_code("zsm") == "ms");
        CHECK_THROWS_AS(map_lang_code("ast"), Error);
        CHECK(try_map_lang_code("ast").empty());
        CHECK_THROWS_AS(map_lang_code("qqq"), Error);
    }

    TEST_CASE("hard rules") {
        CHECK(hard_rules_filter(pair_of("Same text", "same TEXT")) == HardRule::identical);
        CHECK(hard_rules_filter(pair_of("0123456789", std::string(100, 'x'))) == HardRule::length_ratio);
        CHECK(hard_rules_filter(pair_of("0123456789", std::string(60, 'x'))) == std::nullopt);
        CHECK(hard_rules_filter(pair_of(std::string(1025, 'a'), std::string(1025, 'b'))) == HardRule::too_long);
        CHECK(hard_rules_filter(pair_of("The cat sat", "Kissa istui siinä")) == std::nullopt);

        auto lid = extract::NgramLid::from_directory(testing::resource_dir() + "/lid");
        auto en = read_list_file(testing::resource_dir() + "/lid/eng_Latn.txt");
        auto fi = read_list_file(testing::resource_dir() + "/lid/fin_Latn.txt");
        CHECK(hard_rules_filter(pair_of(en[0], fi[0]), &lid) == std::nullopt);
        CHECK(hard_rules_filter(pair_of(en[0], en[1]), &lid) == HardRule::lang_mismatch);
        // a declared language the classifier does not know is not checked
        CHECK(hard_rules_filter(pair_of(en[0], en[1], "smn"), &lid) == std::nullopt);
    }

    TEST_CASE("lexicon scorer") {
        Lexicon lex;
        lex.add("cat", "kissa");
        lex.add("dog", "koira");
        lex.add("house", "talo");
        lex.add("tree", "puu");
        LexiconScorer sc;
        sc.add_lexicon("fin", lex);
        CHECK(*sc.score(pair_of("Cat dog.", "kissa, koira")) == 1.0);
        CHECK(*sc.score(pair_of("bird fish", "lintu kala")) == 0.0);
        CHECK(*sc.score(pair_of("cat dog bird fish", "kissa koira")) == doctest::Approx(0.75));
        CHECK_FALSE(sc.score(pair_of("cat", "gato", "spa")).has_value());
        CHECK(*sc.score(pair_of("cat", "kissa", "fin_Latn")) == 1.0);
        CHECK(content_words("  \"Hello,\" 42 World! ") == std::vector<std::string>{"hello", "world"});

        std::vector<SentencePair> ps{pair_of("cat", "kissa"), pair_of("cat", "gato", "spa")};
        score_pairs(ps, sc);
        CHECK_FALSE(ps[0].unscored);
        CHECK(ps[1].unscored);
        CHECK(ps[1].score == -1.0);

        auto bundled = Lexicon::load(testing::resource_dir() + "/lexicons/fin.tsv");
        CHECK_FALSE(bundled.empty());
        CHECK_THROWS_AS(Lexicon::load("/nonexistent.tsv"), ConfigError);
    }

    TEST_CASE("filter and dedup") {
        std::vector<SentencePair> three(3, pair_of("Hello  there", "Hei siellä", "fin", 0.9));
        three[1].src.text = " Hello there ";
        auto r = filter_and_dedup(three);
        CHECK(r.pairs.size() == 1);
        CHECK(r.counts.raw_pairs == 3);
        CHECK(r.counts.tmx_pairs == 1);

        std::vector<SentencePair> low{pair_of("a b", "c d", "fin", 0.1), pair_of("e f", "g h", "fin", 0.2)};
        auto none = filter_and_dedup(low);
        CHECK(none.pairs.empty());
        CHECK(none.counts.raw_pairs == 2);
        CHECK(none.counts.raw_words == 4);
        CHECK(none.counts.filtered_pairs == 0);

        // 10 pairs: 3 below tau, 2 duplicates of kept pairs
        std::vector<SentencePair> ten;
        for (int i = 0; i < 5; ++i) ten.push_back(pair_of("s" + std::to_string(i), "t" + std::to_string(i), "fin", 0.8));
        for (int i = 0; i < 3; ++i) ten.push_back(pair_of("low" + std::to_string(i), "x", "fin", 0.49));
        ten.push_back(pair_of("s0", "t0", "fin", 0.7));
        ten.push_back(pair_of("s3", "t3", "fin", 0.95));
        auto five = filter_and_dedup(ten);
        CHECK(five.pairs.size() == 5);
        CHECK(five.counts.raw_pairs == 10);
        CHECK(five.counts.filtered_pairs == 7);
        CHECK(five.counts.tmx_pairs == 5);
        CHECK(five.pairs[0].score == 0.8);  // first occurrence wins
        CHECK(filter_and_dedup(five.pairs).pairs == five.pairs);

        FilterOptions strict;
        strict.keep_unscored = false;
        std::vector<SentencePair> unscored{pair_of("a", "b")};
        CHECK(filter_and_dedup(unscored).pairs.size() == 1);
        CHECK(filter_and_dedup(unscored, strict).pairs.empty());
    }

    TEST_CASE("filter_pairs counts hard-rule drops as raw only") {
        std::vector<SentencePair> ps{pair_of("Same", "same", "fin", 0.9), pair_of("Good pair", "Hyvä pari", "fin", 0.9),
                                     pair_of("Other one", "Toinen", "xxx", 0.0)};
        std::map<std::string, std::uint64_t> hard;
        auto r = filter_pairs(ps, FixedScorer{}, nullptr, {}, "fin", &hard);
        CHECK(r.counts.raw_pairs == 3);
        CHECK(r.counts.filtered_pairs == 2);
        CHECK(r.counts.tmx_pairs == 2);
        CHECK(hard["identical"] == 1);
        CHECK(r.counts.raw_pairs >= r.counts.filtered_pairs);
        CHECK(r.counts.filtered_pairs >= r.counts.tmx_pairs);
    }

    TEST_CASE("pivot examples") {
        std::vector<SentencePair> fi{pair_of("The sun rises.", "Aurinko nousee.", "fin")};
        std::vector<SentencePair> fr{pair_of("The sun rises.", "Le soleil se lève.", "fra")};
        auto one = pivot({fi, fr});
        REQUIRE(one.size() == 1);
        CHECK(one[0].left.lang == "fin");
        CHECK(one[0].right.lang == "fra");
        CHECK(one[0].via == "The sun rises.");

        std::vector<SentencePair> other{pair_of("Something else.", "Autre chose.", "fra")};
        CHECK(pivot({fi, other}).empty());

        std::vector<SentencePair> x{pair_of("Key", "x1", "fin"), pair_of("Key", "x2", "fin")};
        std::vector<SentencePair> y{pair_of("Key", "y1", "fra"), pair_of("Key ", "y2", "fra"), pair_of(" Key", "y3", "fra")};
        auto six = pivot({x, y});
        CHECK(six.size() == 6);
        CHECK(pivot({y, x}) == six);
        CHECK(pivot({x, y}, 4).size() == 4);
        // same language never pairs with itself
        CHECK(pivot({x}).empty());
    }

    TEST_CASE("pivot property: brute-force equality and order invariance") {
        std::mt19937_64 rng(77);
        const std::vector<std::string> langs{"deu", "fin", "fra", "spa"};
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<std::vector<SentencePair>> sets(langs.size());
            for (std::size_t l = 0; l < langs.size(); ++l) {
                auto n = rng() % 12;
                for (std::size_t i = 0; i < n; ++i) {
                    auto key = "key " + std::to_string(rng() % 6);
                    sets[l].push_back(pair_of(key, langs[l] + std::to_string(rng() % 3), langs[l], 0.9, i));
                }
            }
            auto got = pivot(sets, 0);
            std::set<std::tuple<std::string, std::string, std::string, std::string, std::string>> got_set;
            for (const auto &p : got) got_set.emplace(p.via, p.left.lang, p.left.text, p.right.lang, p.right.text);
            CHECK(got_set == brute_pivot(sets));
            auto shuffled = sets;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            for (auto &s : shuffled) std::shuffle(s.begin(), s.end(), rng);
            CHECK(pivot(shuffled, 0) == got);
            CHECK(pivot(shuffled, 3) == pivot(sets, 3));
        }
    }

    TEST_CASE("bitext emission") {
        std::vector<SentencePair> ps{pair_of("one", "yksi", "fin", 0.9, 0), pair_of("two\nlines", "kaksi", "fin", 0.8, 1),
                                     pair_of("bad \xff byte", "kolme", "fin", 0.7, 2)};
        std::ostringstream a, b;
        auto st = emit_bitext(ps, a, b);
        CHECK(st.lines == 3);
        CHECK(st.replaced == 2);  // the embedded newline and the invalid byte
        CHECK(count_lines(a.str()) == 3);
        CHECK(count_lines(b.str()) == 3);
        CHECK(a.str().find("\xEF\xBF\xBD") != std::string::npos);

        auto empty = emit_tmx({});
        CHECK(empty.find("<tmx version=\"1.4\">") != std::string::npos);
        CHECK(empty.find("srclang=\"en\"") != std::string::npos);
        CHECK(empty.find("<tu") == std::string::npos);
        CHECK(read_tmx(empty).empty());

        std::vector<SentencePair> good{pair_of("one & <two>", "yksi \"ja\" kaksi", "fin", 0.9, 0),
                                       pair_of("three", "kolme", "fin", -1.0, 1)};
        auto back = read_tmx(emit_tmx(good));
        REQUIRE(back.size() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(back[i].src.text == good[i].src.text);
            CHECK(back[i].trg.text == good[i].trg.text);
            CHECK(back[i].score == good[i].score);
            CHECK(back[i].unscored == good[i].unscored);
            CHECK(back[i].src.doc_id == good[i].src.doc_id);
            CHECK(back[i].trg.sentence_idx == good[i].trg.sentence_idx);
        }
        CHECK_THROWS_AS(read_tmx("<tmx><body><tu>"), DataError);
    }

    TEST_CASE("pair TSV round trip and counts CSV") {
        std::vector<SentencePair> ps{pair_of("one", "yksi", "fin", 0.9, 0), pair_of("two", "kaksi", "fin", -1.0, 1)};
        std::stringstream io;
        write_pair_tsv(io, ps);
        auto back = read_pair_tsv(io, "eng", "fin");
        CHECK(back == ps);

        std::istringstream bare("hello\thei\n\nbye\tmoi\t0.25\n");
        auto b = read_pair_tsv(bare, "eng", "fin");
        REQUIRE(b.size() == 2);
        CHECK(b[0].unscored);
        CHECK(b[1].score == 0.25);
        std::istringstream broken("only one column\n");
        CHECK_THROWS_AS(read_pair_tsv(broken, "eng", "fin"), DataError);

        PairCounts fi{"fi", 10, 50, 8, 40, 6, 30};
        PairCounts fr{"fr", 4, 20, 4, 20, 2, 10};
        auto csv = counts_csv({fi, fr});
        auto lines = split(csv, '\n');
        CHECK(lines[0] == "language,raw_pairs,raw_en_words,filtered_pairs,filtered_en_words,tmx_pairs,tmx_en_words");
        CHECK(lines[1] == "fr,4,20,4,20,2,10");
        CHECK(lines[2] == "fi,10,50,8,40,6,30");
        CHECK(lines[3] == "total,14,70,12,60,8,40");
        CHECK(lines[4].rfind("median,", 0) == 0);
    }
}
