#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace webcorp::dedup {

inline constexpr std::size_t kNumHashes = 240;
inline constexpr std::size_t kShingleWidth = 5;
inline constexpr double kJaccardThreshold = 0.8;

/// Sorted, unique 64-bit shingle hashes of one text.
struct ShingleSet {
    std::vector<std::uint64_t> hashes;
    std::size_t k = kShingleWidth;

    bool operator==(const ShingleSet &) const = default;
};

/// Lowercases, splits on whitespace and hashes every window of `k` tokens.
/// Texts shorter than `k` tokens hash as a single shingle of the whole
/// normalized text (including the empty text).
ShingleSet shingle(std::string_view text, std::size_t k = kShingleWidth);

struct MinHashSignature {
    std::array<std::uint64_t, kNumHashes> minima{};
    std::uint64_t doc_id = 0;

    bool operator==(const MinHashSignature &) const = default;
};

/// Universal hash family h_i(x) = (a_i * x + b_i) mod (2^61 - 1) with
/// coefficients drawn from a fixed splitmix64 seed.
class MinHasher {
  public:
    static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
    static constexpr std::uint64_t kDefaultSeed = 0x6d696e68617368ULL;  // "minhash"

    explicit MinHasher(std::uint64_t seed = kDefaultSeed);

    /// Throws Error on an empty shingle set.
    [[nodiscard]] MinHashSignature sign(const ShingleSet &shingles, std::uint64_t doc_id = 0) const;
    [[nodiscard]] std::uint64_t apply(std::size_t i, std::uint64_t x) const;

  private:
    std::array<std::uint64_t, kNumHashes> a_{};
    std::array<std::uint64_t, kNumHashes> b_{};
};

const MinHasher &default_hasher();

inline MinHashSignature signature(const ShingleSet &shingles, std::uint64_t doc_id = 0) {
    return default_hasher().sign(shingles, doc_id);
}

/// Fraction of equal slots.
double estimate_jaccard(const MinHashSignature &a, const MinHashSignature &b);
/// Span form; throws Error when lengths differ.
double estimate_jaccard(const std::vector<std::uint64_t> &a, const std::vector<std::uint64_t> &b);

} // namespace webcorp::dedup
