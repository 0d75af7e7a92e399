#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::analytics {

inline constexpr std::size_t kDisplayHalf = 500;
inline constexpr std::string_view kDisplaySeparator = "\n[...]\n";

/// Full text up to 1000 scalars; otherwise scalars [0, 500), the
/// separator, and 500 scalars starting at floor(len / 2).
std::string display_text(std::string_view text);

struct InspectionDoc {
    std::string id;
    std::string lang;
    std::string collection;
    std::string text;
};

struct InspectionEntry {
    std::string stratum;
    std::string doc_id;
    std::string lang;
    std::string display_text;
};

struct InspectionSample {
    std::string language;
    std::vector<InspectionEntry> entries;  // grouped by stratum (ascending), sampled order within
    std::vector<std::string> warnings;
};

/// Draws `per_stratum` documents without replacement from each stratum.
/// `strata` maps collection -> stratum label; unmapped collections are
/// their own stratum. Documents are ordered by id before sampling, so the
/// sample depends only on the document set and the seed.
InspectionSample inspection_sample(std::vector<InspectionDoc> docs, const std::map<std::string, std::string> &strata,
                                   std::size_t per_stratum, std::uint64_t seed, const std::string &language = "");

/// Uniform integer in [0, bound) from a 64-bit Mersenne twister by
/// rejection sampling; identical on every platform.
class SeededSampler {
  public:
    explicit SeededSampler(std::uint64_t seed);
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 rng_;
};

/// TSV sheet: doc_id, display_text, lid_ok, unnatural, porn. The three
/// judgement columns are left empty. Tabs, newlines and backslashes in the
/// text are written as \t, \n and \\.
std::string inspection_sheet(const InspectionSample &sample);

} // namespace webcorp::analytics
