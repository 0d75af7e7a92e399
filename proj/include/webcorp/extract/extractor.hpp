#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace webcorp::extract {

/// Main-content extraction strategy. Input is UTF-8 HTML; output is the
/// ordered list of text segments (one per block element).
class Extractor {
  public:
    virtual ~Extractor() = default;
    [[nodiscard]] virtual std::vector<std::string> extract(std::string_view html) const = 0;
};

struct DensityParams {
    double max_link_density = 0.33;  // link chars / text chars
    double min_text_density = 0.20;  // text bytes / markup bytes
    double bad_block_cost = 10.0;    // extra cost of a boilerplate block
};

/// Baseline extractor. Drops non-content elements (scripts, navigation,
/// tables, comment sections, ...), splits the rest into block-level chunks,
/// classifies each chunk by text density and link density, and keeps the
/// content chunks of the maximum-weight contiguous run.
class DensityExtractor final : public Extractor {
  public:
    DensityExtractor() = default;
    explicit DensityExtractor(DensityParams params) : params_(params) {}

    [[nodiscard]] std::vector<std::string> extract(std::string_view html) const override;

  private:
    DensityParams params_;
};

struct ExtractResult {
    std::vector<std::string> segments;
    bool lossy = false;         // charset decoding introduced U+FFFD
    bool parse_failed = false;  // input contained no markup at all
};

/// Decodes the bytes (BOM > meta charset > lenient UTF-8) and runs the extractor.
ExtractResult extract_main_text(std::string_view html_bytes, const Extractor &extractor);
ExtractResult extract_main_text(std::string_view html_bytes);

/// Joins segments with single newlines.
std::string join_segments(const std::vector<std::string> &segments);

} // namespace webcorp::extract
