#pragma once

#include "webcorp/dedup/lsh.hpp"
#include "webcorp/extract/document.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace webcorp::dedup {

/// 64-bit document key: the first 8 bytes of the SHA-256 document id.
std::uint64_t document_key(const extract::ExtractedDocument &doc);

struct DocumentDedup {
    std::vector<bool> keep;                      // aligned with the input
    std::vector<MinHashSignature> signatures;    // aligned with the input
    std::vector<std::vector<std::size_t>> clusters;  // input indices, non-singleton only
    std::size_t removed = 0;
};

/// Near-duplicate removal within each collection; documents of different
/// collections are never compared. Signatures and LSH tables are built on
/// `shards` worker threads (shard-local tables, merged before
/// verification). The result does not depend on `shards` or input order.
DocumentDedup deduplicate(const std::vector<extract::ExtractedDocument> &docs, std::size_t shards = 1,
                          double threshold = kJaccardThreshold);

} // namespace webcorp::dedup
