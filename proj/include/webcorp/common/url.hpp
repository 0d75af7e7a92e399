#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>

namespace webcorp {

/// Minimal absolute-URL split. Host is lowercased; everything else is kept
/// byte-for-byte.
struct Url {
    std::string scheme;
    std::string host;
    std::string port;
    std::string path = "/";
    std::string query;    // without '?'
    bool has_query = false;

    /// host, plus ":port" when a non-default port is given.
    [[nodiscard]] std::string authority() const;
    /// Path plus "?query" when present; what robots.txt rules match against.
    [[nodiscard]] std::string path_and_query() const;
};

/// Returns nullopt for relative or otherwise unusable URLs.
std::optional<Url> parse_url(std::string_view text);

/// Public-suffix rule set in the publicsuffix.org list format
/// ("*.", "!" and plain rules; '//' comments).
class PublicSuffixList {
  public:
    PublicSuffixList() = default;
    static PublicSuffixList load(const std::string &path);
    static PublicSuffixList parse(std::string_view text);

    /// Public suffix + one label, or nullopt when the host is itself a
    /// public suffix, an IP literal, or empty.
    [[nodiscard]] std::optional<std::string> registered_domain(std::string_view host) const;
    [[nodiscard]] std::string public_suffix(std::string_view host) const;

  private:
    std::unordered_set<std::string> rules_;
    std::unordered_set<std::string> wildcards_;   // "*.foo" stored as "foo"
    std::unordered_set<std::string> exceptions_;  // "!www.foo" stored as "www.foo"
};

bool is_ipv4_literal(std::string_view host);

/// Directory holding the bundled resource files; WEBCORP_RESOURCES in the
/// environment overrides the build-time default.
std::string default_resource_dir();

} // namespace webcorp
