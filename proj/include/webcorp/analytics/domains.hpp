#pragma once

#include "webcorp/common/url.hpp"

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace webcorp::analytics {

/// Two-letter country-code TLD set, one per line ('#' comments).
std::unordered_set<std::string> load_country_tlds(const std::string &path);

struct DomainReport {
    std::vector<std::pair<std::string, std::uint64_t>> domains;  // count desc, name asc
    std::vector<std::pair<std::string, std::uint64_t>> tlds;
    std::uint64_t total = 0;
    std::uint64_t geographic = 0;

    [[nodiscard]] double geographic_share_pct() const {
        return total ? 100.0 * static_cast<double>(geographic) / static_cast<double>(total) : 0.0;
    }
};

/// Registered domain is public suffix + 1 label (the host itself for IP
/// literals and bare suffixes); TLD is the final host label. URLs without
/// a usable host count under "unknown" in both tables.
DomainReport domain_report(const std::vector<std::string> &urls, const PublicSuffixList &psl,
                           const std::unordered_set<std::string> &country_tlds);

/// "table,key,count" rows for domains and tlds, then a geographic share row.
std::string domain_report_csv(const DomainReport &r, std::size_t top_k = 0);
std::string domain_report_text(const DomainReport &r, std::size_t top_k = 20);

} // namespace webcorp::analytics
