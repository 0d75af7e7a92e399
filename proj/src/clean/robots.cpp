#include "webcorp/clean/robots.hpp"

#include "webcorp/common/strings.hpp"
#include "webcorp/common/url.hpp"

#include <algorithm>

namespace webcorp::clean {

std::string normalize_agent(std::string_view agent) {
    agent = trim(agent);
    if (auto slash = agent.find('/'); slash != std::string_view::npos) agent = trim(agent.substr(0, slash));
    std::string out = to_lower_ascii(agent);
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

RobotsPolicy parse_robots(std::string_view body) {
    RobotsPolicy policy;
    bool last_was_agent = false;
    for (auto raw : split(body, '\n')) {
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        auto key = to_lower_ascii(trim(line.substr(0, colon)));
        auto value = trim(line.substr(colon + 1));

        if (key == "user-agent" || key == "useragent" || key == "user agent") {
            if (!last_was_agent) policy.groups.emplace_back();
            policy.groups.back().agents.push_back(normalize_agent(value));
            last_was_agent = true;
            continue;
        }
        if (key == "allow" || key == "disallow") {
            last_was_agent = false;
            if (policy.groups.empty() || value.empty()) continue;
            policy.groups.back().rules.push_back({key == "allow", std::string(value)});
            continue;
        }
        // sitemap, crawl-delay and friends neither open nor close a group
    }
    return policy;
}

bool robots_pattern_matches(std::string_view pattern, std::string_view path) {
    bool anchored = !pattern.empty() && pattern.back() == '$';
    if (anchored) pattern.remove_suffix(1);
    // Greedy wildcard matching with backtracking to the last '*'.
    std::size_t p = 0, s = 0;
    std::size_t star = std::string_view::npos, star_s = 0;
    while (true) {
        if (p == pattern.size()) {
            if (!anchored || s == path.size()) return true;
            if (star == std::string_view::npos) return false;
            p = star + 1;
            s = ++star_s;
            continue;
        }
        if (pattern[p] == '*') {
            star = p++;
            star_s = s;
            continue;
        }
        if (s < path.size() && pattern[p] == path[s]) {
            ++p;
            ++s;
            continue;
        }
        if (star == std::string_view::npos || star_s >= path.size()) return false;
        p = star + 1;
        s = ++star_s;
    }
}

std::vector<const RobotsRule *> rules_for_agent(const RobotsPolicy &policy, std::string_view agent) {
    std::string want = normalize_agent(agent);
    std::vector<const RobotsRule *> specific;
    std::vector<const RobotsRule *> wildcard;
    for (const auto &g : policy.groups) {
        bool named = std::find(g.agents.begin(), g.agents.end(), want) != g.agents.end();
        bool star = std::find(g.agents.begin(), g.agents.end(), "*") != g.agents.end();
        for (const auto &r : g.rules) {
            if (named) specific.push_back(&r);
            if (star) wildcard.push_back(&r);
        }
    }
    bool has_named_group = false;
    for (const auto &g : policy.groups) {
        if (std::find(g.agents.begin(), g.agents.end(), want) != g.agents.end()) has_named_group = true;
    }
    return has_named_group ? specific : wildcard;
}

bool is_allowed(const RobotsPolicy &policy, std::string_view agent, std::string_view path) {
    const RobotsRule *best = nullptr;
    for (const auto *r : rules_for_agent(policy, agent)) {
        if (!robots_pattern_matches(r->pattern, path)) continue;
        if (!best || r->pattern.size() > best->pattern.size() ||
            (r->pattern.size() == best->pattern.size() && r->allow && !best->allow)) {
            best = r;
        }
    }
    return !best || best->allow;
}

bool is_disallowed(const RobotsPolicy &policy, std::string_view url) {
    auto parsed = parse_url(url);
    if (!parsed) return false;
    std::string path = parsed->path_and_query();
    for (auto agent : kEnforcedAgents) {
        if (!is_allowed(policy, agent, path)) return true;
    }
    return false;
}

std::vector<std::string> disallowed_urls(const std::vector<std::string> &urls,
                                         const std::map<std::string, RobotsPolicy> &policies) {
    std::vector<std::string> out;
    for (const auto &u : urls) {
        auto parsed = parse_url(u);
        if (!parsed) continue;
        auto it = policies.find(parsed->authority());
        if (it == policies.end()) continue;
        if (is_disallowed(it->second, u)) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace webcorp::clean
