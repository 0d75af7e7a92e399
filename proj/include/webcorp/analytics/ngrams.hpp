#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace webcorp::analytics {

inline constexpr std::size_t kMaxNgramOrder = 5;

/// orders[n-1] lists (n-gram, count) for order n: count descending, then
/// the space-joined n-gram ascending.
struct NgramTable {
    std::vector<std::vector<std::pair<std::string, std::uint64_t>>> orders;
};

/// Frequent n-gram counter with these restrictions:
///   1. n-grams never span a segment ('\n') boundary
///   2. a token containing punctuation (Unicode P*) cannot be part of one
///   3. n-grams starting or ending in a stopword are discarded
///   4. counting is case-insensitive (tokens are lowercased)
///   5. every token needs at least one letter (Unicode L*)
/// Tokens are whitespace-delimited. Counters merge by addition.
class NgramCounter {
  public:
    explicit NgramCounter(std::unordered_set<std::string> stopwords = {}, std::size_t max_n = kMaxNgramOrder);

    void add_text(std::string_view text);
    void merge(const NgramCounter &other);
    [[nodiscard]] NgramTable top(std::size_t k) const;
    [[nodiscard]] std::uint64_t count(const std::string &ngram) const;

  private:
    std::unordered_set<std::string> stopwords_;
    std::size_t max_n_;
    std::vector<std::unordered_map<std::string, std::uint64_t>> counts_;
};

/// Lowercased stopword set from a one-word-per-line file ('#' comments).
std::unordered_set<std::string> load_stopwords(const std::string &path);

NgramTable top_ngrams(const std::vector<std::string> &texts, std::size_t max_n, std::size_t k,
                      const std::unordered_set<std::string> &stopwords);

/// Independent re-check of restrictions 2-5 on one emitted n-gram, using
/// ICU's C character predicates.
bool verify_ngram(std::string_view ngram, const std::unordered_set<std::string> &stopwords);

/// Brute-force occurrence count of a (lowercase) n-gram inside single
/// segments of `texts`; restriction 1 holds by construction.
std::uint64_t recount_ngram(std::string_view ngram, const std::vector<std::string> &texts);

/// "order,rank,ngram,count" CSV.
std::string ngrams_csv(const NgramTable &table);

} // namespace webcorp::analytics
