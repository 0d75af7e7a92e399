#pragma once

#include <string>
#include <string_view>

namespace webcorp::clean {

/// SHA-256 of "warc_file\nurl\ntimestamp" as 64 lowercase hex characters.
/// Throws webcorp::Error when any field is empty.
std::string assign_id(std::string_view warc_file, std::string_view url, std::string_view timestamp);

} // namespace webcorp::clean
