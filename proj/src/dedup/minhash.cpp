#include "webcorp/dedup/minhash.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/hash.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/unicode.hpp"

#include <algorithm>

namespace webcorp::dedup {

namespace {

constexpr std::uint64_t kShingleSeed = 0x7368696e676c65ULL;  // "shingle"

std::uint64_t mod_mersenne61(unsigned __int128 x) {
    constexpr std::uint64_t p = MinHasher::kPrime;
    std::uint64_t lo = static_cast<std::uint64_t>(x & p);
    std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
    std::uint64_t r = lo + (hi & p) + (hi >> 61);
    r = (r & p) + (r >> 61);
    return r >= p ? r - p : r;
}

} // namespace

ShingleSet shingle(std::string_view text, std::size_t k) {
    if (k == 0) k = 1;
    std::string norm = collapse_whitespace(unicode::to_lower(text));
    auto tokens = split_whitespace(norm);
    ShingleSet set;
    set.k = k;
    if (tokens.size() < k) {
        set.hashes.push_back(hash64(norm, kShingleSeed));
        return set;
    }
    set.hashes.reserve(tokens.size() - k + 1);
    for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
        // tokens are views into `norm`, separated by exactly one space
        const char *begin = tokens[i].data();
        const char *end = tokens[i + k - 1].data() + tokens[i + k - 1].size();
        set.hashes.push_back(hash64(std::string_view(begin, static_cast<std::size_t>(end - begin)), kShingleSeed));
    }
    std::sort(set.hashes.begin(), set.hashes.end());
    set.hashes.erase(std::unique(set.hashes.begin(), set.hashes.end()), set.hashes.end());
    return set;
}

MinHasher::MinHasher(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < kNumHashes; ++i) {
        do {
            a_[i] = splitmix64(state) & kPrime;
        } while (a_[i] == 0 || a_[i] >= kPrime);
        do {
            b_[i] = splitmix64(state) & kPrime;
        } while (b_[i] >= kPrime);
    }
}

std::uint64_t MinHasher::apply(std::size_t i, std::uint64_t x) const {
    unsigned __int128 v = static_cast<unsigned __int128>(a_[i]) * mod_mersenne61(x) + b_[i];
    return mod_mersenne61(v);
}

MinHashSignature MinHasher::sign(const ShingleSet &shingles, std::uint64_t doc_id) const {
    if (shingles.hashes.empty()) throw Error("minhash: empty shingle set");
    MinHashSignature sig;
    sig.doc_id = doc_id;
    sig.minima.fill(~std::uint64_t{0});
    for (std::uint64_t x : shingles.hashes) {
        std::uint64_t xr = mod_mersenne61(x);
        for (std::size_t i = 0; i < kNumHashes; ++i) {
            unsigned __int128 v = static_cast<unsigned __int128>(a_[i]) * xr + b_[i];
            std::uint64_t h = mod_mersenne61(v);
            if (h < sig.minima[i]) sig.minima[i] = h;
        }
    }
    return sig;
}

const MinHasher &default_hasher() {
    static const MinHasher hasher;
    return hasher;
}

double estimate_jaccard(const MinHashSignature &a, const MinHashSignature &b) {
    std::size_t eq = 0;
    for (std::size_t i = 0; i < kNumHashes; ++i) eq += a.minima[i] == b.minima[i];
    return static_cast<double>(eq) / static_cast<double>(kNumHashes);
}

double estimate_jaccard(const std::vector<std::uint64_t> &a, const std::vector<std::uint64_t> &b) {
    if (a.size() != b.size()) throw Error("minhash: signature length mismatch");
    if (a.empty()) throw Error("minhash: empty signature");
    std::size_t eq = 0;
    for (std::size_t i = 0; i < a.size(); ++i) eq += a[i] == b[i];
    return static_cast<double>(eq) / static_cast<double>(a.size());
}

} // namespace webcorp::dedup
