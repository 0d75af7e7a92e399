#include "webcorp/dedup/documents.hpp"

#include "webcorp/common/hash.hpp"
#include "webcorp/common/parallel.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace webcorp::dedup {

std::uint64_t document_key(const extract::ExtractedDocument &doc) {
    auto digest = sha256(doc.warc_file + "\n" + doc.url + "\n" + doc.timestamp);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | digest[static_cast<std::size_t>(i)];
    return v;
}


DocumentDedup deduplicate(const std::vector<extract::ExtractedDocument> &docs, std::size_t shards,
                          double threshold) {
    shards = std::max<std::size_t>(1, shards);
    DocumentDedup out;
    out.keep.assign(docs.size(), true);
    out.signatures.resize(docs.size());

    run_shards(shards, [&](std::size_t s) {
        for (std::size_t i = s; i < docs.size(); i += shards) {
            out.signatures[i] = signature(shingle(docs[i].text), document_key(docs[i]));
        }
    });

    std::map<std::string, std::vector<std::size_t>> by_collection;
    for (std::size_t i = 0; i < docs.size(); ++i) by_collection[docs[i].collection].push_back(i);

    for (const auto &[name, members] : by_collection) {
        std::vector<MinHashSignature> sigs;
        std::vector<DocRef> refs;
        sigs.reserve(members.size());
        for (auto i : members) {
            sigs.push_back(out.signatures[i]);
            refs.push_back({docs[i].warc_file, docs[i].record_offset, docs[i].url});
        }

        std::vector<LshIndex> local(shards);
        run_shards(shards, [&](std::size_t s) {
            for (std::size_t j = s; j < sigs.size(); j += shards) local[s].add(j, sigs[j]);
        });
        LshIndex merged;
        for (auto &l : local) merged.merge(std::move(l));

        auto pairs = verify_pairs(merged.candidate_pairs(), sigs, threshold);
        for (const auto &c : cluster(pairs, refs)) {
            if (c.members.size() < 2) continue;
            std::vector<std::size_t> global;
            for (auto j : c.members) {
                global.push_back(members[j]);
                if (j != c.representative) {
                    out.keep[members[j]] = false;
                    ++out.removed;
                }
            }
            out.clusters.push_back(std::move(global));
        }
    }
    return out;
}

} // namespace webcorp::dedup
