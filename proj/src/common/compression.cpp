#include "webcorp/common/compression.hpp"

#include "webcorp/common/error.hpp"
#include "zstd_api.h"

#include <zlib.h>

#include <memory>

namespace webcorp {

Codec sniff_codec(std::string_view head) {
    if (head.size() >= 2 && static_cast<unsigned char>(head[0]) == 0x1f &&
        static_cast<unsigned char>(head[1]) == 0x8b) {
        return Codec::gzip;
    }
    if (head.size() >= 4 && static_cast<unsigned char>(head[0]) == 0x28 &&
        static_cast<unsigned char>(head[1]) == 0xb5 && static_cast<unsigned char>(head[2]) == 0x2f &&
        static_cast<unsigned char>(head[3]) == 0xfd) {
        return Codec::zstd;
    }
    return Codec::none;
}

FrameResult decompress_gzip_member(std::string_view in) {
    z_stream z{};
    if (inflateInit2(&z, 16 + MAX_WBITS) != Z_OK) throw Error("zlib inflateInit2 failed");
    FrameResult res;
    z.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(in.data()));
    z.avail_in = static_cast<uInt>(in.size());
    char buf[1 << 15];
    int ret = Z_OK;
    while (true) {
        z.next_out = reinterpret_cast<Bytef *>(buf);
        z.avail_out = sizeof buf;
        ret = inflate(&z, Z_NO_FLUSH);
        res.data.append(buf, sizeof buf - z.avail_out);
        if (ret == Z_STREAM_END) {
            res.complete = true;
            break;
        }
        if (ret == Z_BUF_ERROR && z.avail_in == 0) break;  // truncated
        if (ret != Z_OK) break;                           // corrupt
    }
    res.consumed = in.size() - z.avail_in;
    inflateEnd(&z);
    if (!res.complete && ret != Z_BUF_ERROR && ret != Z_OK) {
        // corrupt data: report everything up to the failure as consumed
        res.consumed = std::max<std::size_t>(res.consumed, 1);
    }
    return res;
}

FrameResult decompress_zstd_frame(std::string_view in) {
    std::unique_ptr<ZSTD_DStream, decltype(&ZSTD_freeDStream)> ds(ZSTD_createDStream(), ZSTD_freeDStream);
    if (!ds) throw Error("ZSTD_createDStream failed");
    ZSTD_initDStream(ds.get());
    FrameResult res;
    ZSTD_inBuffer input{in.data(), in.size(), 0};
    std::string buf(ZSTD_DStreamOutSize(), '\0');
    while (true) {
        ZSTD_outBuffer output{buf.data(), buf.size(), 0};
        std::size_t ret = ZSTD_decompressStream(ds.get(), &output, &input);
        if (ZSTD_isError(ret)) {
            res.consumed = std::max<std::size_t>(input.pos, 1);
            return res;
        }
        res.data.append(buf.data(), output.pos);
        if (ret == 0) {
            res.complete = true;
            break;
        }
        if (input.pos == input.size && output.pos < output.size) break;  // truncated
    }
    res.consumed = input.pos;
    return res;
}

std::string gzip_decompress(std::string_view in) {
    std::string out;
    while (!in.empty()) {
        auto r = decompress_gzip_member(in);
        if (!r.complete) throw DataError("gzip: truncated or corrupt stream");
        out += r.data;
        in.remove_prefix(r.consumed);
    }
    return out;
}

std::string gzip_compress(std::string_view in) {
    z_stream z{};
    if (deflateInit2(&z, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw Error("zlib deflateInit2 failed");
    }
    std::string out(deflateBound(&z, static_cast<uLong>(in.size())) + 32, '\0');
    z.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(in.data()));
    z.avail_in = static_cast<uInt>(in.size());
    z.next_out = reinterpret_cast<Bytef *>(out.data());
    z.avail_out = static_cast<uInt>(out.size());
    int ret = deflate(&z, Z_FINISH);
    out.resize(z.total_out);
    deflateEnd(&z);
    if (ret != Z_STREAM_END) throw Error("zlib deflate failed");
    return out;
}

std::string zstd_compress(std::string_view in, int level) {
    std::string out(ZSTD_compressBound(in.size()), '\0');
    std::size_t n = ZSTD_compress(out.data(), out.size(), in.data(), in.size(), level);
    if (ZSTD_isError(n)) throw Error(std::string("zstd compress: ") + ZSTD_getErrorName(n));
    out.resize(n);
    return out;
}

std::string zstd_decompress(std::string_view in) {
    std::string out;
    while (!in.empty()) {
        auto r = decompress_zstd_frame(in);
        if (!r.complete) throw DataError("zstd: truncated or corrupt stream");
        out += r.data;
        in.remove_prefix(r.consumed);
    }
    return out;
}

} // namespace webcorp
