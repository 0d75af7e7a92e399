#pragma once

#include "webcorp/dedup/minhash.hpp"

#include <istream>
#include <ostream>
#include <vector>

namespace webcorp::dedup {

/// Signature shard file, all integers little-endian:
///   magic "WCMH" | u32 version (=1) | u64 count |
///   count x ( u64 doc_id | 240 x u64 minima )
inline constexpr char kShardMagic[4] = {'W', 'C', 'M', 'H'};
inline constexpr std::uint32_t kShardVersion = 1;

void write_signature_shard(std::ostream &out, const std::vector<MinHashSignature> &sigs);
/// Throws DataError on bad magic, unsupported version or truncation.
std::vector<MinHashSignature> read_signature_shard(std::istream &in);

} // namespace webcorp::dedup
