#include "webcorp/dedup/lsh.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/hash.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace webcorp::dedup {

std::uint64_t band_key(const MinHashSignature &sig, std::size_t band) {
    const auto *p = reinterpret_cast<const char *>(sig.minima.data() + band * kRows);
    return hash64(std::string_view(p, kRows * sizeof(std::uint64_t)), 0x62616e64ULL + band);
}

LshIndex::LshIndex() : bands_(kBands) {}

void LshIndex::add(std::size_t id, const MinHashSignature &sig) {
    for (std::size_t b = 0; b < kBands; ++b) bands_[b][band_key(sig, b)].push_back(id);
}

void LshIndex::merge(LshIndex &&other) {
    for (std::size_t b = 0; b < kBands; ++b) {
        for (auto &[key, ids] : other.bands_[b]) {
            auto &dst = bands_[b][key];
            dst.insert(dst.end(), ids.begin(), ids.end());
        }
    }
    other.bands_.assign(kBands, {});
}

std::vector<IdPair> LshIndex::candidate_pairs() const {
    std::vector<IdPair> out;
    for (const auto &table : bands_) {
        for (const auto &[_, ids] : table) {
            if (ids.size() < 2) continue;
            std::vector<std::size_t> sorted = ids;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                for (std::size_t j = i + 1; j < sorted.size(); ++j) {
                    if (sorted[i] != sorted[j]) out.emplace_back(sorted[i], sorted[j]);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IdPair> find_candidates(const std::vector<MinHashSignature> &signatures, double threshold) {
    LshIndex index;
    for (std::size_t i = 0; i < signatures.size(); ++i) index.add(i, signatures[i]);
    return verify_pairs(index.candidate_pairs(), signatures, threshold);
}

std::vector<IdPair> verify_pairs(const std::vector<IdPair> &candidates,
                                 const std::vector<MinHashSignature> &signatures, double threshold) {
    std::vector<IdPair> out;
    for (const auto &pr : candidates) {
        if (estimate_jaccard(signatures[pr.first], signatures[pr.second]) >= threshold) out.push_back(pr);
    }
    return out;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

std::vector<DedupCluster> cluster(const std::vector<IdPair> &pairs, const std::vector<DocRef> &refs) {
    const std::size_t n = refs.size();
    UnionFind uf(n);
    for (const auto &[a, b] : pairs) {
        if (a >= n || b >= n) throw Error("dedup: pair endpoint outside id set");
        uf.unite(a, b);
    }
    std::map<std::size_t, std::size_t> root_to_cluster;
    std::vector<DedupCluster> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto root = uf.find(i);
        auto [it, inserted] = root_to_cluster.try_emplace(root, out.size());
        if (inserted) out.push_back(DedupCluster{{}, i});
        auto &c = out[it->second];
        c.members.push_back(i);
        if (refs[i] < refs[c.representative]) c.representative = i;
    }
    return out;
}

} // namespace webcorp::dedup
