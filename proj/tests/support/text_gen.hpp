#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace webcorp::testing {

/// Resource directory of the source tree (set by CMake).
std::string resource_dir();

/// Random text in one of the seed-profile languages. Latin and Cyrillic
/// scripts draw words from the seed vocabulary; jpn and zho draw whole
/// seed sentences.
class TextGen {
  public:
    explicit TextGen(std::uint64_t seed);

    static const std::vector<std::string> &languages();  // ISO 639-3 part, e.g. "fin"
    static bool is_cjk(const std::string &lang);
    static std::string label(const std::string &lang);    // "fin" -> "fin_Latn"

    /// One segment: `words` words ending in '.' (CJK: `words` seed clauses).
    std::string sentence(const std::string &lang, std::size_t words);
    /// Segments until the joined text reaches `min_chars` scalars.
    std::vector<std::string> paragraphs(const std::string &lang, std::size_t min_chars, std::size_t min_words = 10,
                                        std::size_t max_words = 18);
    std::uint64_t below(std::uint64_t n);
    std::mt19937_64 &rng() { return rng_; }

  private:
    const std::vector<std::string> &vocab(const std::string &lang);

    std::mt19937_64 rng_;
};

std::string join_lines(const std::vector<std::string> &lines);

} // namespace webcorp::testing
