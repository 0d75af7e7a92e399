#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace webcorp::extract {

/// One machine-translation marker. Only tag markup is inspected, never text.
///   tag:NAME          element name
///   attr:NAME         attribute present
///   attr:NAME=VALUE   attribute value contains VALUE
///   class:TOKEN       class list contains TOKEN
///   id:VALUE          id equals VALUE
struct MtIndicator {
    enum class Kind { tag, attr, attr_value, class_token, id };
    Kind kind;
    std::string name;
    std::string value;
};

class MtDetector {
  public:
    MtDetector() = default;
    explicit MtDetector(std::vector<MtIndicator> indicators) : indicators_(std::move(indicators)) {}

    /// Parses the indicator file format ('#' comments, one entry per line).
    static MtDetector parse(const std::vector<std::string> &lines);
    static MtDetector load(const std::string &path);

    /// True iff any indicator matches a start tag (matching is ASCII
    /// case-insensitive; the bytes need not be valid in any charset).
    [[nodiscard]] bool detect(std::string_view html) const;
    [[nodiscard]] std::size_t size() const { return indicators_.size(); }

  private:
    std::vector<MtIndicator> indicators_;
};

} // namespace webcorp::extract
