#pragma once

#include "webcorp/clean/gates.hpp"
#include "webcorp/common/url.hpp"

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace webcorp::clean {

/// URL blocklist in the UT1 category layout: a directory holding a
/// `domains` file and a `urls` file (scheme-less "host/path" prefixes).
class AdultBlocklist {
  public:
    AdultBlocklist() = default;
    AdultBlocklist(std::vector<std::string> domains, std::vector<std::string> url_prefixes);

    /// Throws webcorp::ConfigError if either file is missing.
    static AdultBlocklist load(const std::string &dir);

    /// Listed when the host or one of its parent domains is in `domains`
    /// (parents stop at the registered domain when a suffix list is given),
    /// or when the scheme-stripped URL starts with a `urls` entry.
    [[nodiscard]] bool blocked(std::string_view url, const PublicSuffixList *psl = nullptr) const;

    [[nodiscard]] bool empty() const { return domains_.empty() && prefixes_.empty(); }

  private:
    std::unordered_set<std::string> domains_;
    std::unordered_set<std::string> prefixes_;
    std::size_t longest_prefix_ = 0;
};

CleanDecision adult_url_gate(std::string_view url, const AdultBlocklist &blocklist,
                             const PublicSuffixList *psl = nullptr);

} // namespace webcorp::clean
