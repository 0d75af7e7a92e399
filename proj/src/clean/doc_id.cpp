#include "webcorp/clean/doc_id.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/hash.hpp"

namespace webcorp::clean {

std::string assign_id(std::string_view warc_file, std::string_view url, std::string_view timestamp) {
    if (warc_file.empty() || url.empty() || timestamp.empty())
        throw Error("assign_id: warc file, url and timestamp must be non-empty");
    std::string joined;
    joined.reserve(warc_file.size() + url.size() + timestamp.size() + 2);
    joined.append(warc_file).push_back('\n');
    joined.append(url).push_back('\n');
    joined.append(timestamp);
    return sha256_hex(joined);
}

} // namespace webcorp::clean
