#include "webcorp/clean/exclusion_index.hpp"

#include "webcorp/common/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace webcorp::clean {

namespace {

constexpr char kMagic[4] = {'W', 'C', 'X', 'I'};
constexpr std::uint32_t kVersion = 1;

struct BuildState {
    bool final = false;
    std::vector<std::pair<std::uint8_t, std::uint32_t>> edges;  // appended in label order
};

// Incremental construction from sorted input (Daciuk, Mihov, Watson, Watson).
class Builder {
  public:
    Builder() { states_.emplace_back(); }

    void add(std::string_view word) {
        std::size_t common = 0;
        while (common < word.size() && common < prev_.size() && word[common] == prev_[common]) ++common;
        minimize(common);
        std::uint32_t node = path_.empty() ? 0 : path_.back().child;
        for (std::size_t i = common; i < word.size(); ++i) {
            auto child = static_cast<std::uint32_t>(states_.size());
            states_.emplace_back();
            auto label = static_cast<std::uint8_t>(word[i]);
            states_[node].edges.emplace_back(label, child);
            path_.push_back({node, label, child});
            node = child;
        }
        states_[node].final = true;
        prev_.assign(word);
    }

    std::vector<BuildState> finish(std::uint32_t &root) {
        minimize(0);
        root = 0;
        return std::move(states_);
    }

  private:
    struct Step {
        std::uint32_t parent;
        std::uint8_t label;
        std::uint32_t child;
    };

    std::string signature(std::uint32_t s) const {
        std::string key;
        key.push_back(states_[s].final ? '1' : '0');
        for (auto [label, target] : states_[s].edges) {
            key.push_back(static_cast<char>(label));
            key.append(reinterpret_cast<const char *>(&target), sizeof target);
        }
        return key;
    }

    void minimize(std::size_t down_to) {
        while (path_.size() > down_to) {
            Step step = path_.back();
            path_.pop_back();
            auto key = signature(step.child);
            auto [it, inserted] = register_.try_emplace(std::move(key), step.child);
            if (!inserted) {
                // The child is the last edge of its parent; redirect it.
                states_[step.parent].edges.back().second = it->second;
            }
        }
        prev_.resize(std::min(prev_.size(), down_to));
    }

    std::vector<BuildState> states_;
    std::vector<Step> path_;
    std::string prev_;
    std::unordered_map<std::string, std::uint32_t> register_;
};

void put_varint(std::string &out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

class Reader {
  public:
    explicit Reader(std::string_view b) : b_(b) {}

    std::uint8_t byte() {
        if (pos_ >= b_.size()) throw DataError("exclusion index: truncated image");
        return static_cast<std::uint8_t>(b_[pos_++]);
    }

    std::uint64_t varint() {
        std::uint64_t v = 0;
        for (int shift = 0; shift < 64; shift += 7) {
            auto c = byte();
            v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
            if (!(c & 0x80)) return v;
        }
        throw DataError("exclusion index: bad varint");
    }

    [[nodiscard]] bool done() const { return pos_ == b_.size(); }
    std::string_view take(std::size_t n) {
        if (b_.size() - pos_ < n) throw DataError("exclusion index: truncated image");
        auto s = b_.substr(pos_, n);
        pos_ += n;
        return s;
    }

  private:
    std::string_view b_;
    std::size_t pos_ = 0;
};

} // namespace

ExclusionIndex ExclusionIndex::build(const std::vector<std::string> &urls) {
    for (std::size_t i = 1; i < urls.size(); ++i) {
        if (!(urls[i - 1] < urls[i])) throw Error("exclusion index input must be sorted and unique");
    }
    Builder builder;
    for (const auto &u : urls) builder.add(u);
    std::uint32_t root = 0;
    auto states = builder.finish(root);

    // Renumber reachable states in reverse postorder: a topological order,
    // so every edge points forward and targets can be delta-coded.
    std::vector<std::uint32_t> post;
    std::vector<std::uint8_t> seen(states.size(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
        auto &[s, next] = stack.back();
        if (next < states[s].edges.size()) {
            auto t = states[s].edges[next++].second;
            if (!seen[t]) {
                seen[t] = 1;
                stack.emplace_back(t, 0);
            }
            continue;
        }
        post.push_back(s);
        stack.pop_back();
    }
    std::vector<std::uint32_t> order(post.rbegin(), post.rend());
    std::vector<std::uint32_t> renum(states.size(), UINT32_MAX);
    for (std::size_t i = 0; i < order.size(); ++i) renum[order[i]] = static_cast<std::uint32_t>(i);

    ExclusionIndex idx;
    idx.count_ = urls.size();
    idx.root_ = 0;
    idx.first_edge_.reserve(order.size() + 1);
    for (auto s : order) {
        idx.first_edge_.push_back(static_cast<std::uint32_t>(idx.labels_.size()));
        idx.final_.push_back(states[s].final ? 1 : 0);
        for (auto [label, target] : states[s].edges) {
            idx.labels_.push_back(label);
            idx.targets_.push_back(renum[target]);
        }
    }
    idx.first_edge_.push_back(static_cast<std::uint32_t>(idx.labels_.size()));
    return idx;
}

bool ExclusionIndex::contains(std::string_view url) const {
    if (first_edge_.empty()) return false;
    std::uint32_t s = root_;
    for (char ch : url) {
        auto c = static_cast<std::uint8_t>(ch);
        auto begin = labels_.begin() + first_edge_[s];
        auto end = labels_.begin() + first_edge_[s + 1];
        auto it = std::lower_bound(begin, end, c);
        if (it == end || *it != c) return false;
        s = targets_[static_cast<std::size_t>(it - labels_.begin())];
    }
    return final_[s] != 0;
}

std::string ExclusionIndex::serialize() const {
    std::string out(kMagic, sizeof kMagic);
    put_varint(out, kVersion);
    put_varint(out, count_);
    put_varint(out, state_count());
    for (std::size_t s = 0; s < state_count(); ++s) {
        auto n = first_edge_[s + 1] - first_edge_[s];
        // final flag folded into the edge count
        put_varint(out, (static_cast<std::uint64_t>(n) << 1) | final_[s]);
        for (auto e = first_edge_[s]; e < first_edge_[s + 1]; ++e) {
            out.push_back(static_cast<char>(labels_[e]));
            // Targets are mostly the next state in preorder; store the delta.
            put_varint(out, static_cast<std::uint64_t>(targets_[e]) - s);
        }
    }
    return out;
}

ExclusionIndex ExclusionIndex::deserialize(std::string_view bytes) {
    Reader r(bytes);
    if (r.take(4) != std::string_view(kMagic, 4)) throw DataError("exclusion index: bad magic");
    if (r.varint() != kVersion) throw DataError("exclusion index: unsupported version");
    ExclusionIndex idx;
    idx.count_ = r.varint();
    auto n = r.varint();
    if (n > bytes.size()) throw DataError("exclusion index: implausible state count");
    for (std::uint64_t s = 0; s < n; ++s) {
        idx.first_edge_.push_back(static_cast<std::uint32_t>(idx.labels_.size()));
        auto head = r.varint();
        idx.final_.push_back(static_cast<std::uint8_t>(head & 1));
        auto edges = head >> 1;
        int prev_label = -1;
        for (std::uint64_t e = 0; e < edges; ++e) {
            auto label = r.byte();
            if (static_cast<int>(label) <= prev_label) throw DataError("exclusion index: unsorted edges");
            prev_label = label;
            auto target = s + r.varint();
            if (target <= s || target >= n) throw DataError("exclusion index: bad edge target");
            idx.labels_.push_back(label);
            idx.targets_.push_back(static_cast<std::uint32_t>(target));
        }
    }
    idx.first_edge_.push_back(static_cast<std::uint32_t>(idx.labels_.size()));
    if (!r.done()) throw DataError("exclusion index: trailing bytes");
    if (n == 0 && idx.count_ != 0) throw DataError("exclusion index: count without states");
    if (n == 0) idx.first_edge_.clear();
    return idx;
}

} // namespace webcorp::clean
