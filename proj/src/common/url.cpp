#include "webcorp/common/url.hpp"

#include "webcorp/common/strings.hpp"

#include <cstdlib>
#include <vector>

#ifndef WEBCORP_DEFAULT_RESOURCE_DIR
#define WEBCORP_DEFAULT_RESOURCE_DIR "resources"
#endif

namespace webcorp {

namespace {

bool scheme_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '+' || c == '-' || c == '.';
}

std::string_view default_port(std::string_view scheme) {
    if (scheme == "http") return "80";
    if (scheme == "https") return "443";
    if (scheme == "ftp") return "21";
    return "";
}

} // namespace

std::string Url::authority() const {
    if (port.empty() || port == default_port(scheme)) return host;
    return host + ":" + port;
}

std::string Url::path_and_query() const {
    return has_query ? path + "?" + query : path;
}

std::optional<Url> parse_url(std::string_view text) {
    text = trim(text);
    auto colon = text.find("://");
    if (colon == std::string_view::npos || colon == 0) return std::nullopt;
    for (char c : text.substr(0, colon)) {
        if (!scheme_char(c)) return std::nullopt;
    }
    Url url;
    url.scheme = to_lower_ascii(text.substr(0, colon));
    std::string_view rest = text.substr(colon + 3);

    auto auth_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, auth_end);
    rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
    std::string_view host = authority;
    if (!authority.empty() && authority.front() == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = authority.substr(0, close + 1);
        if (close + 1 < authority.size() && authority[close + 1] == ':') url.port = authority.substr(close + 2);
    } else if (auto pc = authority.rfind(':'); pc != std::string_view::npos) {
        host = authority.substr(0, pc);
        url.port = authority.substr(pc + 1);
    }
    for (char c : url.port) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    while (!host.empty() && host.back() == '.') host.remove_suffix(1);
    if (host.empty()) return std::nullopt;
    for (char c : host) {
        if (static_cast<unsigned char>(c) <= 0x20 || c == '/' || c == '\\') return std::nullopt;
    }
    url.host = to_lower_ascii(host);

    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    std::string_view path = rest;
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        path = rest.substr(0, q);
        url.query = rest.substr(q + 1);
        url.has_query = true;
    }
    url.path = path.empty() ? "/" : std::string(path);
    return url;
}

bool is_ipv4_literal(std::string_view host) {
    auto parts = split(host, '.');
    if (parts.size() != 4) return false;
    for (auto p : parts) {
        if (p.empty() || p.size() > 3) return false;
        for (char c : p) {
            if (c < '0' || c > '9') return false;
        }
        if (std::stoi(std::string(p)) > 255) return false;
    }
    return true;
}

PublicSuffixList PublicSuffixList::load(const std::string &path) {
    return parse(read_file(path));
}

PublicSuffixList PublicSuffixList::parse(std::string_view text) {
    PublicSuffixList psl;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty() || line.starts_with("//")) continue;
        // rules end at the first whitespace
        if (auto ws = line.find_first_of(" \t"); ws != std::string_view::npos) line = line.substr(0, ws);
        std::string rule = to_lower_ascii(line);
        if (rule.starts_with("!")) {
            psl.exceptions_.insert(rule.substr(1));
        } else if (rule.starts_with("*.")) {
            psl.wildcards_.insert(rule.substr(2));
        } else {
            psl.rules_.insert(rule);
        }
    }
    return psl;
}

std::string PublicSuffixList::public_suffix(std::string_view host_in) const {
    std::string host = to_lower_ascii(host_in);
    auto labels = split(host, '.');
    const std::size_t n = labels.size();
    // Longest matching rule; an exception rule drops its leftmost label.
    std::size_t best = 1;  // implicit "*" rule
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t start = 0;
        for (std::size_t j = 0; j < i; ++j) start += labels[j].size() + 1;
        std::string suffix = host.substr(start);
        std::size_t count = n - i;
        if (exceptions_.count(suffix)) {
            best = count - 1;
            break;
        }
        if (rules_.count(suffix)) best = std::max(best, count);
        if (i + 1 < n) {
            std::string parent = host.substr(start + labels[i].size() + 1);
            if (wildcards_.count(parent)) best = std::max(best, count);
        }
    }
    std::size_t start = 0;
    for (std::size_t j = 0; j + best < n; ++j) start += labels[j].size() + 1;
    return host.substr(start);
}

std::optional<std::string> PublicSuffixList::registered_domain(std::string_view host_in) const {
    if (host_in.empty() || is_ipv4_literal(host_in) || host_in.front() == '[') return std::nullopt;
    std::string host = to_lower_ascii(host_in);
    std::string suffix = public_suffix(host);
    if (suffix.size() >= host.size()) return std::nullopt;
    std::string_view head = std::string_view(host).substr(0, host.size() - suffix.size() - 1);
    auto dot = head.rfind('.');
    std::string_view label = dot == std::string_view::npos ? head : head.substr(dot + 1);
    if (label.empty()) return std::nullopt;
    return std::string(label) + "." + suffix;
}

std::string default_resource_dir() {
    if (const char *env = std::getenv("WEBCORP_RESOURCES"); env && *env) return env;
    return WEBCORP_DEFAULT_RESOURCE_DIR;
}

} // namespace webcorp
