#include "webcorp/analytics/domains.hpp"

#include "webcorp/common/strings.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace webcorp::analytics {

std::unordered_set<std::string> load_country_tlds(const std::string &path) {
    std::unordered_set<std::string> out;
    for (const auto &t : read_list_file(path)) out.insert(to_lower_ascii(t));
    return out;
}

namespace {

std::vector<std::pair<std::string, std::uint64_t>> ranked(const std::map<std::string, std::uint64_t> &m) {
    std::vector<std::pair<std::string, std::uint64_t>> v(m.begin(), m.end());
    std::stable_sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
    return v;
}

} // namespace

DomainReport domain_report(const std::vector<std::string> &urls, const PublicSuffixList &psl,
                           const std::unordered_set<std::string> &country_tlds) {
    std::map<std::string, std::uint64_t> domains, tlds;
    DomainReport r;
    for (const auto &u : urls) {
        ++r.total;
        auto parsed = parse_url(u);
        if (!parsed || parsed->host.empty()) {
            ++domains["unknown"];
            ++tlds["unknown"];
            continue;
        }
        const auto &host = parsed->host;
        auto reg = psl.registered_domain(host);
        ++domains[reg ? *reg : host];
        if (is_ipv4_literal(host) || host.front() == '[') {
            ++tlds["unknown"];
            continue;
        }
        auto dot = host.rfind('.');
        auto tld = dot == std::string::npos ? host : host.substr(dot + 1);
        ++tlds[tld];
        if (country_tlds.count(tld)) ++r.geographic;
    }
    r.domains = ranked(domains);
    r.tlds = ranked(tlds);
    return r;
}

std::string domain_report_csv(const DomainReport &r, std::size_t top_k) {
    std::ostringstream out;
    out << "table,key,count\n";
    auto rows = [&](const char *table, const auto &v) {
        std::size_t n = top_k ? std::min(top_k, v.size()) : v.size();
        for (std::size_t i = 0; i < n; ++i) out << table << ',' << v[i].first << ',' << v[i].second << '\n';
    };
    rows("domain", r.domains);
    rows("tld", r.tlds);
    out << "summary,documents," << r.total << '\n';
    out << "summary,geographic_tld_docs," << r.geographic << '\n';
    out << "summary,geographic_tld_pct," << r.geographic_share_pct() << '\n';
    return out.str();
}

std::string domain_report_text(const DomainReport &r, std::size_t top_k) {
    std::ostringstream out;
    out << "documents: " << r.total << "\ngeographic TLD share: " << r.geographic_share_pct() << " %\n";
    auto block = [&](const char *title, const auto &v) {
        out << title << '\n';
        for (std::size_t i = 0; i < std::min(top_k, v.size()); ++i)
            out << "  " << v[i].second << '\t' << v[i].first << '\n';
    };
    block("top domains", r.domains);
    block("top TLDs", r.tlds);
    return out.str();
}

} // namespace webcorp::analytics
