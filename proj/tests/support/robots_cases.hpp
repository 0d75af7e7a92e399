#pragma once

#include <string>
#include <vector>

namespace webcorp::testing {

struct RobotsCase {
    std::string name;
    std::string body;
    std::string agent;
    std::string path;
    bool allowed;
};

// Hand-derived expectations under longest-match, Allow-wins-ties semantics.
inline const std::vector<RobotsCase> &robots_cases() {
    static const std::vector<RobotsCase> cases = {
        {"deny-all star", "User-agent: *\nDisallow: /", "*", "/", false},
        {"deny-all covers ccbot", "User-agent: *\nDisallow: /", "ccbot", "/anything", false},
        {"deny-all covers query", "User-agent: *\nDisallow: /", "ia_archiver", "/x?y=1", false},
        {"ccbot group applies", "User-agent: CCBot\nDisallow: /private/", "ccbot", "/private/a", false},
        {"ccbot group other path", "User-agent: CCBot\nDisallow: /private/", "ccbot", "/public/a", true},
        {"ccbot group not for star", "User-agent: CCBot\nDisallow: /private/", "*", "/private/a", true},
        {"ccbot group not for ia", "User-agent: CCBot\nDisallow: /private/", "ia_archiver", "/private/a", true},
        {"longer allow wins", "User-agent: *\nDisallow: /a\nAllow: /a/b", "*", "/a/b/c", true},
        {"disallow outside allow", "User-agent: *\nDisallow: /a\nAllow: /a/b", "*", "/a/c", false},
        {"tie goes to allow", "User-agent: *\nDisallow: /p\nAllow: /p", "*", "/page", true},
        {"dollar anchor match", "User-agent: *\nDisallow: /*.pdf$", "*", "/docs/x.pdf", false},
        {"dollar anchor miss", "User-agent: *\nDisallow: /*.pdf$", "*", "/docs/x.pdf?dl=1", true},
        {"inner wildcard match", "User-agent: *\nDisallow: /*/secret", "*", "/a/b/secret/x", false},
        {"inner wildcard miss", "User-agent: *\nDisallow: /*/secret", "*", "/secret", true},
        {"agent group beats star", "User-agent: *\nDisallow: /\n\nUser-agent: CCBot\nAllow: /", "ccbot", "/x", true},
        {"star still binds others", "User-agent: *\nDisallow: /\n\nUser-agent: CCBot\nAllow: /", "ia_archiver", "/x",
         false},
        {"foreign agent only (star)", "User-agent: Googlebot\nDisallow: /", "*", "/x", true},
        {"foreign agent only (ccbot)", "User-agent: Googlebot\nDisallow: /", "ccbot", "/x", true},
        {"comments only", "# nothing here\n   # still nothing\n", "*", "/x", true},
        {"agent token normalized", "User-agent: ia-archiver/1.0\nDisallow: /arch", "ia_archiver", "/archive", false},
        {"empty disallow allows", "User-agent: *\nDisallow:", "*", "/x", true},
        {"multi-agent group", "User-agent: CCBot\nUser-agent: Other\nDisallow: /shared", "ccbot", "/shared/1", false},
        {"paths are case sensitive", "user-agent: *\ndisallow: /CaseSensitive", "*", "/casesensitive", true},
        {"trailing wildcard", "User-agent: *\nDisallow: /fish*", "*", "/fishheads", false},
        {"root anchor match", "User-agent: *\nDisallow: /$", "*", "/", false},
        {"root anchor miss", "User-agent: *\nDisallow: /$", "*", "/index.html", true},
        {"agent name case-insensitive", "User-agent: ccBOT\nDisallow: /x", "ccbot", "/x/y", false},
        {"rules before any group ignored", "Disallow: /\nUser-agent: *\nAllow: /", "*", "/x", true},
    };
    return cases;
}

struct RobotsUrlCase {
    std::string name;
    std::string body;
    std::string url;
    bool dropped;
};

// Document-level: dropped iff any of *, CCBot, ia_archiver is disallowed.
inline const std::vector<RobotsUrlCase> &robots_url_cases() {
    static const std::vector<RobotsUrlCase> cases = {
        {"ia_archiver alone drops", "User-agent: ia_archiver\nDisallow: /", "http://h.example/page", true},
        {"ccbot alone drops", "User-agent: CCBot\nDisallow: /p", "http://h.example/p/1", true},
        {"foreign agent keeps", "User-agent: Googlebot\nDisallow: /", "http://h.example/page", false},
        {"star denies despite ccbot allow", "User-agent: *\nDisallow: /\n\nUser-agent: CCBot\nAllow: /",
         "http://h.example/x", true},
        {"query is part of the path", "User-agent: *\nDisallow: /search?q=", "http://h.example/search?q=cats", true},
        {"allowed everywhere", "User-agent: *\nAllow: /", "http://h.example/x", false},
    };
    return cases;
}

} // namespace webcorp::testing
