#include "webcorp/clean/adult.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"

#include <filesystem>

namespace webcorp::clean {

namespace {

std::string strip_scheme(std::string_view url) {
    if (auto p = url.find("://"); p != std::string_view::npos) url.remove_prefix(p + 3);
    if (istarts_with(url, "www.")) url.remove_prefix(4);
    return std::string(url);
}

} // namespace

AdultBlocklist::AdultBlocklist(std::vector<std::string> domains, std::vector<std::string> url_prefixes) {
    for (auto &d : domains) {
        auto lower = to_lower_ascii(trim(d));
        if (!lower.empty()) domains_.insert(std::move(lower));
    }
    for (auto &u : url_prefixes) {
        auto p = strip_scheme(trim(u));
        if (p.empty()) continue;
        // host part is case-insensitive; paths are kept as listed
        auto slash = p.find('/');
        auto host = to_lower_ascii(std::string_view(p).substr(0, slash));
        p = host + (slash == std::string::npos ? "" : p.substr(slash));
        longest_prefix_ = std::max(longest_prefix_, p.size());
        prefixes_.insert(std::move(p));
    }
}

AdultBlocklist AdultBlocklist::load(const std::string &dir) {
    namespace fs = std::filesystem;
    auto domains = fs::path(dir) / "domains";
    auto urls = fs::path(dir) / "urls";
    if (!fs::is_regular_file(domains) || !fs::is_regular_file(urls))
        throw ConfigError("adult blocklist directory must contain 'domains' and 'urls': " + dir);
    return AdultBlocklist(read_list_file(domains.string()), read_list_file(urls.string()));
}

bool AdultBlocklist::blocked(std::string_view url, const PublicSuffixList *psl) const {
    auto parsed = parse_url(url);
    if (!parsed) return false;
    if (!domains_.empty()) {
        std::string_view host = parsed->host;
        std::optional<std::string> floor;
        if (psl) floor = psl->registered_domain(host);
        while (!host.empty()) {
            if (domains_.count(std::string(host))) return true;
            if (floor && host == *floor) break;
            auto dot = host.find('.');
            if (dot == std::string_view::npos) break;
            host.remove_prefix(dot + 1);
        }
    }
    if (!prefixes_.empty()) {
        std::string bare = parsed->authority() + parsed->path_and_query();
        if (istarts_with(bare, "www.")) bare.erase(0, 4);
        for (std::size_t n = 1; n <= std::min(bare.size(), longest_prefix_); ++n) {
            if (prefixes_.count(bare.substr(0, n))) return true;
        }
    }
    return false;
}

CleanDecision adult_url_gate(std::string_view url, const AdultBlocklist &blocklist, const PublicSuffixList *psl) {
    return blocklist.blocked(url, psl) ? CleanDecision::reject(RejectReason::adult_url) : CleanDecision::keep();
}

} // namespace webcorp::clean
