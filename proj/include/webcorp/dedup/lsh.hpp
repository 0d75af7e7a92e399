#pragma once

#include "webcorp/dedup/minhash.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace webcorp::dedup {

inline constexpr std::size_t kBands = 24;
inline constexpr std::size_t kRows = 10;
static_assert(kBands * kRows == kNumHashes);

using IdPair = std::pair<std::size_t, std::size_t>;  // first < second

/// Banded LSH table. Ids are caller-defined dense indices. Shards may build
/// their own index and be merged afterwards; merge order does not affect
/// the candidate set.
class LshIndex {
  public:
    LshIndex();

    void add(std::size_t id, const MinHashSignature &sig);
    void merge(LshIndex &&other);

    /// Unordered pairs that collide in at least one band, sorted.
    [[nodiscard]] std::vector<IdPair> candidate_pairs() const;

  private:
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::size_t>>> bands_;
};

std::uint64_t band_key(const MinHashSignature &sig, std::size_t band);

/// Candidate pairs from banding, kept only if their estimated Jaccard is
/// at least `threshold`. Ids are positions in `signatures`.
std::vector<IdPair> find_candidates(const std::vector<MinHashSignature> &signatures,
                                    double threshold = kJaccardThreshold);

/// Keeps the pairs whose estimated Jaccard is at least `threshold`.
std::vector<IdPair> verify_pairs(const std::vector<IdPair> &candidates,
                                 const std::vector<MinHashSignature> &signatures,
                                 double threshold = kJaccardThreshold);
/// Provenance used to pick a cluster's representative.
struct DocRef {
    std::string warc_file;
    std::uint64_t record_offset = 0;
    std::string url;

    auto operator<=>(const DocRef &) const = default;
};

struct DedupCluster {
    std::vector<std::size_t> members;  // sorted
    std::size_t representative = 0;
};

class UnionFind {
  public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

/// Connected components of `pairs` over ids [0, refs.size()). Each cluster's
/// representative is the member with the smallest (warc_file, offset, url).
/// Clusters are returned ordered by their smallest member id.
std::vector<DedupCluster> cluster(const std::vector<IdPair> &pairs, const std::vector<DocRef> &refs);

} // namespace webcorp::dedup
