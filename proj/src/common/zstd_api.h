// Declarations for the stable subset of the libzstd API used by this project.
// Matches zstd.h (v1.3+) for these symbols; linked against the system libzstd.
#pragma once

#include <cstddef>

extern "C" {

typedef struct ZSTD_DCtx_s ZSTD_DStream;

typedef struct ZSTD_inBuffer_s {
    const void *src;
    std::size_t size;
    std::size_t pos;
} ZSTD_inBuffer;

typedef struct ZSTD_outBuffer_s {
    void *dst;
    std::size_t size;
    std::size_t pos;
} ZSTD_outBuffer;

ZSTD_DStream *ZSTD_createDStream(void);
std::size_t ZSTD_freeDStream(ZSTD_DStream *zds);
std::size_t ZSTD_initDStream(ZSTD_DStream *zds);
std::size_t ZSTD_decompressStream(ZSTD_DStream *zds, ZSTD_outBuffer *output, ZSTD_inBuffer *input);
std::size_t ZSTD_DStreamOutSize(void);

std::size_t ZSTD_compress(void *dst, std::size_t dstCapacity, const void *src, std::size_t srcSize,
                          int compressionLevel);
std::size_t ZSTD_compressBound(std::size_t srcSize);

unsigned ZSTD_isError(std::size_t code);
const char *ZSTD_getErrorName(std::size_t code);
}
