#include "text_gen.hpp"

#include "webcorp/analytics/domains.hpp"
#include "webcorp/analytics/inspect.hpp"
#include "webcorp/analytics/ngrams.hpp"
#include "webcorp/analytics/stats.hpp"
#include "webcorp/clean/document.hpp"
#include "webcorp/common/error.hpp"
#include "webcorp/common/url.hpp"
#include "webcorp/common/utf8.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace webcorp;
using namespace webcorp::analytics;

namespace {

clean::CleanedDocument doc(const std::string &id, const std::vector<std::string> &segs, const std::string &coll = "c",
                           const std::string &lang = "eng_Latn") {
    clean::CleanedDocument d;
    d.id = id;
    d.collection = coll;
    d.document_lang = lang;
    d.url = "http://" + id + ".example/";
    d.text = testing::join_lines(segs);
    d.seg_langs.assign(segs.size(), lang);
    return d;
}

const PublicSuffixList &psl() {
    static const auto list = PublicSuffixList::load(testing::resource_dir() + "/public_suffix_list.dat");
    return list;
}

const std::unordered_set<std::string> &cctlds() {
    static const auto set = load_country_tlds(testing::resource_dir() + "/cctlds.txt");
    return set;
}

std::string scalars(std::size_t n) {
    // distinct code points so slices are identifiable: letters cycle through a-z and then Greek
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i % 2) ? "a" : "é";
    return s;
}

} // namespace

TEST_SUITE("analytics") {
    TEST_CASE("stats: hand-counted unique segments") {
        // 10 docs x 2 segments; one shared first segment, 7 distinct second segments -> 8 / 20
        CorpusStatsBuilder b;
        for (int i = 0; i < 10; ++i) {
            auto second = "second segment number " + std::to_string(i < 7 ? i : 0) + " here";
            b.add(doc("d" + std::to_string(i), {"shared first segment for all", second}));
        }
        auto s = b.finish();
        CHECK(s.overall.doc_count == 10);
        CHECK(s.overall.segment_count == 20);
        CHECK(s.overall.unique_segment_pct == doctest::Approx(40.0));
        CHECK(s.overall.docs_over_25_segments_pct == 0.0);
        CHECK(s.overall.short_segment_pct == 0.0);
        CHECK(s.overall.seg_lang_match_pct == 100.0);
    }

    TEST_CASE("stats: 25-segment boundary, short segments and language match") {
        std::vector<std::string> segs;
        for (int i = 0; i < 26; ++i) segs.push_back("one two three four five " + std::to_string(i));
        CorpusStatsBuilder b;
        b.add(doc("long", segs));
        CHECK(b.finish().overall.docs_over_25_segments_pct == 100.0);
        segs.pop_back();
        CorpusStatsBuilder c;
        c.add(doc("edge", segs));
        CHECK(c.finish().overall.docs_over_25_segments_pct == 0.0);

        auto d = doc("m", {"one two three four", "one two three four five", "日本語の文です", "十文字以上の日本語の文です"});
        d.seg_langs = {"eng_Latn", "eng_Latn", "jpn_Jpan", "eng_Latn"};
        CorpusStatsBuilder e;
        e.add(d);
        auto row = e.finish().overall;
        // the document language decides: unspaced Japanese counts as one word here
        CHECK(row.short_segment_pct == 75.0);
        CHECK(row.seg_lang_match_pct == 75.0);
        auto j = doc("j", {"日本語の文です", "十文字以上の日本語の文です"}, "c", "jpn_Jpan");
        CorpusStatsBuilder f;
        f.add(j);
        CHECK(f.finish().overall.short_segment_pct == 50.0);
    }

    TEST_CASE("stats: JSONL input, malformed lines and errors") {
        std::ostringstream js;
        js << clean::to_json(doc("a", {"alpha beta gamma delta epsilon"}, "x")).dump() << "\n";
        js << "{not json\n\n";
        js << clean::to_json(doc("b", {"alpha beta gamma delta epsilon", "zeta"}, "y")).dump() << "\n";
        std::istringstream in(js.str());
        auto s = compute_stats(in);
        CHECK(s.malformed_lines == 1);
        CHECK(s.overall.doc_count == 2);
        CHECK(s.per_collection.size() == 2);
        CHECK(s.per_collection.at("y").segment_count == 2);
        CHECK(s.overall.char_count == 30 + 30 + 1 + 4);
        CHECK(s.overall.word_count == 11);
        CHECK(stats_csv(s).rfind("scope,doc_count", 0) == 0);

        std::istringstream empty("");
        CHECK_THROWS_WITH_AS(compute_stats(empty), doctest::Contains("empty corpus"), Error);
        std::istringstream junk("garbage\n");
        CHECK_THROWS_AS(compute_stats(junk), Error);
    }

    TEST_CASE("stats: merging equals pooled recomputation") {
        testing::TextGen gen(11);
        std::vector<clean::CleanedDocument> docs;
        for (int i = 0; i < 40; ++i) {
            auto segs = gen.paragraphs("eng", 200 + gen.below(600), 2, 12);
            if (i % 5 == 0) segs.push_back(segs.front());
            docs.push_back(doc("d" + std::to_string(i), segs, i % 3 ? "p" : "q"));
        }
        CorpusStatsBuilder all, left, right;
        for (std::size_t i = 0; i < docs.size(); ++i) {
            all.add(docs[i]);
            (i % 2 ? left : right).add(docs[i]);
        }
        left.merge(right);
        auto a = all.finish(), m = left.finish();
        CHECK(a.overall.doc_count == m.overall.doc_count);
        CHECK(a.overall.segment_count == m.overall.segment_count);
        CHECK(a.overall.unique_segment_pct == m.overall.unique_segment_pct);
        CHECK(a.overall.short_segment_pct == m.overall.short_segment_pct);
        CHECK(a.overall.char_count == m.overall.char_count);
        CHECK(stats_csv(a) == stats_csv(m));
    }

    TEST_CASE("n-gram restriction examples") {
        NgramCounter c({"the"}, 3);
        c.add_text("the cat sat");
        auto t = c.top(10);
        REQUIRE(t.orders.size() == 3);
        REQUIRE(t.orders[1].size() == 1);
        CHECK(t.orders[1][0].first == "cat sat");
        CHECK(t.orders[2].empty());  // "the cat sat" starts with a stopword
        CHECK(c.count("the") == 0);

        NgramCounter d;
        d.add_text("a1 b2");
        CHECK(d.count("a1 b2") == 1);
        d.add_text("end. start");
        CHECK(d.count("end. start") == 0);
        CHECK(d.count("end start") == 0);
        CHECK(d.count("start") == 1);
        d.add_text("line one\nline two");
        CHECK(d.count("one line") == 0);
        d.add_text("Cat cAT cat");
        CHECK(d.count("cat") == 3);
        CHECK(d.count("cat cat") == 2);
        d.add_text("12 34 x");
        CHECK(d.count("12 34") == 0);
        CHECK(d.count("x") == 1);
        d.add_text("it’s fine");  // curly apostrophe is punctuation
        CHECK(d.count("fine") == 1);
        CHECK(d.count("it’s") == 0);
    }

    TEST_CASE("n-gram verifier and brute-force recount over generated text") {
        auto stop = load_stopwords(testing::resource_dir() + "/stopwords/eng.txt");
        REQUIRE_FALSE(stop.empty());
        testing::TextGen gen(5);
        std::vector<std::string> texts;
        for (int i = 0; i < 60; ++i) texts.push_back(testing::join_lines(gen.paragraphs("eng", 300, 4, 10)));
        texts.push_back("The Quick fox. the quick fox\nquick, fox quick fox");
        auto table = top_ngrams(texts, 5, 15, stop);
        REQUIRE(table.orders.size() == 5);
        for (const auto &order : table.orders) {
            for (std::size_t i = 0; i < order.size(); ++i) {
                CHECK(verify_ngram(order[i].first, stop));
                CHECK(order[i].second == recount_ngram(order[i].first, texts));
                if (i) {
                    CHECK((order[i - 1].second > order[i].second ||
                           (order[i - 1].second == order[i].second && order[i - 1].first < order[i].first)));
                }
            }
        }
        CHECK_FALSE(verify_ngram("the cat", {"the"}));
        CHECK_FALSE(verify_ngram("cat, dog", {}));
        CHECK_FALSE(verify_ngram("42 dogs", {}));
        CHECK_FALSE(verify_ngram("Cat", {}));
        CHECK(verify_ngram("cat dog", {"the"}));
        CHECK(ngrams_csv(table).rfind("order,rank,ngram,count\n", 0) == 0);

        // shard merge adds counts
        NgramCounter whole(stop), a(stop), b(stop);
        for (std::size_t i = 0; i < texts.size(); ++i) {
            whole.add_text(texts[i]);
            (i % 2 ? a : b).add_text(texts[i]);
        }
        a.merge(b);
        CHECK(ngrams_csv(a.top(20)) == ngrams_csv(whole.top(20)));
    }

    TEST_CASE("domain report") {
        auto r = domain_report({"https://blog.example.co.uk/p"}, psl(), cctlds());
        REQUIRE(r.domains.size() == 1);
        CHECK(r.domains[0].first == "example.co.uk");
        CHECK(r.tlds[0].first == "uk");
        CHECK(r.geographic == 1);

        auto com = domain_report({"http://a.com/", "http://b.com/x", "http://www.a.com/y"}, psl(), cctlds());
        CHECK(com.geographic_share_pct() == 0.0);
        CHECK(com.domains == std::vector<std::pair<std::string, std::uint64_t>>{{"a.com", 2}, {"b.com", 1}});

        std::vector<std::string> urls{"http://x.fi/1", "http://x.fi/2", "https://www.x.fi/3", "http://y.de/", "no host"};
        auto four = domain_report(urls, psl(), cctlds());
        CHECK(four.domains[0] == std::pair<std::string, std::uint64_t>{"x.fi", 3});
        CHECK(four.domains[1] == std::pair<std::string, std::uint64_t>{"unknown", 1});
        CHECK(four.domains[2] == std::pair<std::string, std::uint64_t>{"y.de", 1});
        std::uint64_t sum = 0;
        for (const auto &[k, v] : four.domains) sum += v;
        CHECK(sum == four.total);
        CHECK(four.total == 5);
        std::reverse(urls.begin(), urls.end());
        CHECK(domain_report_csv(domain_report(urls, psl(), cctlds())) == domain_report_csv(four));
    }

    TEST_CASE("display text truncation") {
        auto full = scalars(1000);
        CHECK(display_text(full) == full);
        auto two = scalars(2000);
        auto shown = display_text(two);
        CHECK(shown == utf8::substr(two, 0, 500) + std::string(kDisplaySeparator) + utf8::substr(two, 1000, 500));
        CHECK(utf8::length(shown) == 1000 + utf8::length(kDisplaySeparator));
        auto odd = scalars(1001);
        CHECK(display_text(odd) == utf8::substr(odd, 0, 500) + std::string(kDisplaySeparator) + utf8::substr(odd, 500, 500));
        CHECK(display_text("") == "");
    }

    TEST_CASE("stratified seeded sampling") {
        std::vector<InspectionDoc> docs;
        for (int i = 0; i < 120; ++i)
            docs.push_back({"id" + std::to_string(i), "fin_Latn", i < 100 ? "wide15" : "cc40", "text " + std::to_string(i)});
        std::map<std::string, std::string> strata{{"wide15", "IA"}, {"cc40", "CC"}};
        auto a = inspection_sample(docs, strata, 50, 42, "fin");
        auto shuffled = docs;
        std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(3));
        auto b = inspection_sample(shuffled, strata, 50, 42, "fin");
        CHECK(inspection_sheet(a) == inspection_sheet(b));
        CHECK(a.entries.size() == 70);
        CHECK(a.warnings.size() == 1);  // CC has only 20
        std::set<std::string> ids;
        for (const auto &e : a.entries) ids.insert(e.doc_id);
        CHECK(ids.size() == 70);
        CHECK(a.entries.front().stratum == "CC");
        auto c = inspection_sample(docs, strata, 50, 43, "fin");
        CHECK(inspection_sheet(c) != inspection_sheet(a));
        auto sheet = inspection_sheet(a);
        CHECK(sheet.rfind("doc_id\tdisplay_text\tlid_ok\tunnatural\tporn\n", 0) == 0);

        SeededSampler s1(7), s2(7);
        for (int i = 0; i < 100; ++i) CHECK(s1.below(13) == s2.below(13));
    }
}
