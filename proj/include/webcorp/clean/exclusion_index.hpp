#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::clean {

/// Immutable exact-membership URL set stored as a minimal acyclic
/// automaton over URL bytes. Shared prefixes and suffixes collapse.
class ExclusionIndex {
  public:
    ExclusionIndex() = default;

    /// `urls` must be strictly increasing (sorted, no duplicates); throws
    /// webcorp::Error otherwise.
    static ExclusionIndex build(const std::vector<std::string> &urls);

    /// Throws webcorp::DataError on a malformed image.
    static ExclusionIndex deserialize(std::string_view bytes);

    [[nodiscard]] bool contains(std::string_view url) const;
    [[nodiscard]] std::uint64_t size() const { return count_; }
    [[nodiscard]] std::size_t state_count() const { return first_edge_.empty() ? 0 : first_edge_.size() - 1; }

    /// Byte-deterministic for identical input.
    [[nodiscard]] std::string serialize() const;

  private:
    std::uint64_t count_ = 0;
    std::uint32_t root_ = 0;
    // State s owns edges [first_edge_[s], first_edge_[s+1]), sorted by label.
    std::vector<std::uint32_t> first_edge_;
    std::vector<std::uint8_t> final_;
    std::vector<std::uint8_t> labels_;
    std::vector<std::uint32_t> targets_;
};

inline ExclusionIndex build_exclusion_index(const std::vector<std::string> &urls) {
    return ExclusionIndex::build(urls);
}

} // namespace webcorp::clean
