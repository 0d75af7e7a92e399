#pragma once

#include <string>
#include <string_view>

namespace webcorp::bitext {

/// ISO 639-3 (optionally with "_Script") to ISO 639-1. Individual members
/// of a macrolanguage map to the macrolanguage's code (swh -> sw,
/// zsm -> ms, pes -> fa ...). Throws webcorp::Error when no two-letter
/// code exists.
std::string map_lang_code(std::string_view code3);

/// Same lookup without throwing; empty when unmapped.
std::string try_map_lang_code(std::string_view code3);

} // namespace webcorp::bitext
