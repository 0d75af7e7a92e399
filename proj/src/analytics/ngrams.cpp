#include "webcorp/analytics/ngrams.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/unicode.hpp"
#include "webcorp/common/utf8.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <sstream>

namespace webcorp::analytics {

namespace {

bool usable_token(std::string_view tok) {
    bool letter = false;
    for (char32_t c : utf8::decode(tok)) {
        if (unicode::is_punctuation(c)) return false;
        if (unicode::is_letter(c)) letter = true;
    }
    return letter;
}

} // namespace

NgramCounter::NgramCounter(std::unordered_set<std::string> stopwords, std::size_t max_n)
    : max_n_(std::max<std::size_t>(1, max_n)), counts_(max_n_) {
    for (const auto &w : stopwords) stopwords_.insert(unicode::to_lower(w));
}

void NgramCounter::add_text(std::string_view text) {
    for (auto seg : split(text, '\n')) {
        // Runs of usable tokens; any other token breaks the window.
        std::vector<std::string> run;
        auto flush = [&] {
            for (std::size_t i = 0; i < run.size(); ++i) {
                if (stopwords_.count(run[i])) continue;
                std::string gram;
                for (std::size_t n = 1; n <= max_n_ && i + n <= run.size(); ++n) {
                    if (n > 1) gram.push_back(' ');
                    gram += run[i + n - 1];
                    if (stopwords_.count(run[i + n - 1])) continue;
                    ++counts_[n - 1][gram];
                }
            }
            run.clear();
        };
        for (auto tok : split_whitespace(seg)) {
            if (usable_token(tok)) {
                run.push_back(unicode::to_lower(tok));
            } else {
                flush();
            }
        }
        flush();
    }
}

void NgramCounter::merge(const NgramCounter &other) {
    for (std::size_t n = 0; n < std::min(max_n_, other.max_n_); ++n) {
        for (const auto &[g, c] : other.counts_[n]) counts_[n][g] += c;
    }
}

NgramTable NgramCounter::top(std::size_t k) const {
    NgramTable t;
    for (const auto &m : counts_) {
        std::vector<std::pair<std::string, std::uint64_t>> v(m.begin(), m.end());
        auto cmp = [](const auto &a, const auto &b) { return a.second != b.second ? a.second > b.second : a.first < b.first; };
        if (k < v.size()) {
            std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), cmp);
            v.resize(k);
        } else {
            std::sort(v.begin(), v.end(), cmp);
        }
        t.orders.push_back(std::move(v));
    }
    return t;
}

std::uint64_t NgramCounter::count(const std::string &ngram) const {
    auto n = split_whitespace(ngram).size();
    if (n == 0 || n > max_n_) return 0;
    auto it = counts_[n - 1].find(ngram);
    return it == counts_[n - 1].end() ? 0 : it->second;
}

std::unordered_set<std::string> load_stopwords(const std::string &path) {
    std::unordered_set<std::string> out;
    for (const auto &w : read_list_file(path)) out.insert(unicode::to_lower(w));
    return out;
}

NgramTable top_ngrams(const std::vector<std::string> &texts, std::size_t max_n, std::size_t k,
                      const std::unordered_set<std::string> &stopwords) {
    NgramCounter c(stopwords, max_n);
    for (const auto &t : texts) c.add_text(t);
    return c.top(k);
}

bool verify_ngram(std::string_view ngram, const std::unordered_set<std::string> &stopwords) {
    std::vector<std::string_view> toks;
    std::size_t pos = 0;
    while (pos <= ngram.size()) {
        auto sp = ngram.find(' ', pos);
        if (sp == std::string_view::npos) sp = ngram.size();
        toks.push_back(ngram.substr(pos, sp - pos));
        pos = sp + 1;
    }
    if (toks.empty()) return false;
    for (auto tok : toks) {
        if (tok.empty()) return false;
        bool alpha = false;
        std::size_t i = 0;
        while (i < tok.size()) {
            auto c = static_cast<UChar32>(utf8::decode_one(tok, i));
            if (u_ispunct(c)) return false;
            if (u_isWhitespace(c) || u_isspace(c) || c == '\n') return false;
            if (u_isalpha(c)) alpha = true;
            if (u_tolower(c) != c) return false;
        }
        if (!alpha) return false;
    }
    auto is_stop = [&](std::string_view t) {
        return std::any_of(stopwords.begin(), stopwords.end(), [&](const std::string &s) {
            std::string lower;
            std::size_t i = 0;
            while (i < s.size()) utf8::append(lower, static_cast<char32_t>(u_tolower(static_cast<UChar32>(utf8::decode_one(s, i)))));
            return lower == t;
        });
    };
    return !is_stop(toks.front()) && !is_stop(toks.back());
}

std::uint64_t recount_ngram(std::string_view ngram, const std::vector<std::string> &texts) {
    std::vector<std::string> want;
    for (auto t : split_whitespace(ngram)) want.emplace_back(t);
    std::uint64_t total = 0;
    for (const auto &text : texts) {
        for (auto seg : split(text, '\n')) {
            std::vector<std::string> toks;
            for (auto t : split_whitespace(seg)) toks.push_back(unicode::to_lower(t));
            for (std::size_t i = 0; i + want.size() <= toks.size(); ++i) {
                if (std::equal(want.begin(), want.end(), toks.begin() + static_cast<std::ptrdiff_t>(i))) ++total;
            }
        }
    }
    return total;
}

std::string ngrams_csv(const NgramTable &table) {
    std::ostringstream out;
    out << "order,rank,ngram,count\n";
    for (std::size_t n = 0; n < table.orders.size(); ++n) {
        std::size_t rank = 0;
        for (const auto &[g, c] : table.orders[n]) {
            out << (n + 1) << ',' << ++rank << ",\"" << g << "\"," << c << '\n';
        }
    }
    return out.str();
}

} // namespace webcorp::analytics
