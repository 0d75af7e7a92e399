#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace webcorp::clean {

struct RobotsRule {
    bool allow = false;
    std::string pattern;  // '*' wildcard, trailing '$' anchor

    bool operator==(const RobotsRule &) const = default;
};

struct RobotsGroup {
    std::vector<std::string> agents;  // normalized product tokens
    std::vector<RobotsRule> rules;

    bool operator==(const RobotsGroup &) const = default;
};

struct RobotsPolicy {
    std::vector<RobotsGroup> groups;

    [[nodiscard]] bool empty() const { return groups.empty(); }
    bool operator==(const RobotsPolicy &) const = default;
};

/// Agents whose exclusion removes a document.
inline constexpr std::array<std::string_view, 3> kEnforcedAgents = {"*", "ccbot", "ia_archiver"};

/// Lowercases, drops any "/version" suffix and maps '-' to '_', so
/// "IA-Archiver/1.0" and "ia_archiver" compare equal.
std::string normalize_agent(std::string_view agent);

/// Consecutive User-agent lines open a group; Allow/Disallow lines that
/// follow belong to it. Comments, unknown directives, rules outside a group
/// and empty Allow/Disallow values are ignored.
RobotsPolicy parse_robots(std::string_view body);

/// Prefix match with '*' (any sequence) and a trailing '$' (end anchor).
bool robots_pattern_matches(std::string_view pattern, std::string_view path);

/// Rules that apply to `agent`: the groups naming it, else the '*' groups.
std::vector<const RobotsRule *> rules_for_agent(const RobotsPolicy &policy, std::string_view agent);

/// Longest matching rule wins; an Allow wins a length tie. `path` is the
/// URL path plus query.
bool is_allowed(const RobotsPolicy &policy, std::string_view agent, std::string_view path);

/// True iff any enforced agent is disallowed for the URL.
bool is_disallowed(const RobotsPolicy &policy, std::string_view url);

/// URLs (sorted, unique) disallowed by the policy of their own host.
/// `policies` is keyed by URL authority.
std::vector<std::string> disallowed_urls(const std::vector<std::string> &urls,
                                         const std::map<std::string, RobotsPolicy> &policies);

} // namespace webcorp::clean
