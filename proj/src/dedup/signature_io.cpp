#include "webcorp/dedup/signature_io.hpp"

#include "webcorp/common/error.hpp"

#include <cstring>

namespace webcorp::dedup {

namespace {

void put_u64(std::ostream &out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 8);
}

void put_u32(std::ostream &out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 4);
}

std::uint64_t get_u64(std::istream &in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char *>(b), 8)) throw DataError("signature shard: truncated");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint32_t get_u32(std::istream &in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char *>(b), 4)) throw DataError("signature shard: truncated");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

} // namespace

void write_signature_shard(std::ostream &out, const std::vector<MinHashSignature> &sigs) {
    out.write(kShardMagic, 4);
    put_u32(out, kShardVersion);
    put_u64(out, sigs.size());
    for (const auto &s : sigs) {
        put_u64(out, s.doc_id);
        for (auto m : s.minima) put_u64(out, m);
    }
}

std::vector<MinHashSignature> read_signature_shard(std::istream &in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kShardMagic, 4) != 0) {
        throw DataError("signature shard: bad magic");
    }
    auto version = get_u32(in);
    if (version != kShardVersion) throw DataError("signature shard: unsupported version " + std::to_string(version));
    auto count = get_u64(in);
    std::vector<MinHashSignature> out;
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1 << 20)));
    for (std::uint64_t i = 0; i < count; ++i) {
        MinHashSignature s;
        s.doc_id = get_u64(in);
        for (auto &m : s.minima) m = get_u64(in);
        out.push_back(s);
    }
    return out;
}

} // namespace webcorp::dedup
