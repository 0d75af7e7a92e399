#include "webcorp/clean/pii.hpp"

#include "webcorp/common/utf8.hpp"

#include <algorithm>

namespace webcorp::clean {

namespace {

bool ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_alnum(char32_t c) { return ascii_digit(c) || ascii_alpha(c); }

bool local_char(char32_t c) {
    return ascii_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}
bool domain_char(char32_t c) { return ascii_alnum(c) || c == '.' || c == '-'; }

void scan_emails(const std::u32string &t, std::vector<PiiSpan> &out) {
    for (std::size_t at = 0; at < t.size(); ++at) {
        if (t[at] != '@') continue;
        std::size_t b = at;
        while (b > 0 && local_char(t[b - 1])) --b;
        if (b == at) continue;
        std::size_t e = at + 1;
        while (e < t.size() && domain_char(t[e])) ++e;
        // Sentence punctuation after the address is not part of it.
        while (e > at + 1 && (t[e - 1] == '.' || t[e - 1] == '-')) --e;
        std::u32string_view domain(t.data() + at + 1, e - at - 1);
        if (domain.empty() || domain.front() == '.' || domain.front() == '-') continue;
        if (domain.find(U"..") != std::u32string_view::npos) continue;
        auto dot = domain.rfind('.');
        if (dot == std::u32string_view::npos) continue;
        auto tld = domain.substr(dot + 1);
        if (tld.size() < 2 || !std::all_of(tld.begin(), tld.end(), ascii_alpha)) continue;
        out.push_back({b, e, PiiKind::email});
    }
}

void scan_phones(const std::u32string &t, std::vector<PiiSpan> &out) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] != '+') continue;
        if (i > 0 && ascii_alnum(t[i - 1])) continue;
        std::size_t j = i + 1, digits = 0;
        if (j >= t.size() || !ascii_digit(t[j])) continue;
        while (j < t.size()) {
            if (ascii_digit(t[j])) {
                ++digits;
                ++j;
            } else if ((t[j] == ' ' || t[j] == '-' || t[j] == '.') && j + 1 < t.size() && ascii_digit(t[j + 1])) {
                ++j;
            } else {
                break;
            }
        }
        if (j < t.size() && ascii_alpha(t[j])) continue;
        if (digits >= 8 && digits <= 15) out.push_back({i, j, PiiKind::phone});
    }
}

// Parses one octet at i; returns the end position or npos.
std::size_t octet(const std::u32string &t, std::size_t i) {
    std::size_t j = i;
    unsigned v = 0;
    while (j < t.size() && ascii_digit(t[j]) && j - i < 4) {
        v = v * 10 + static_cast<unsigned>(t[j] - '0');
        ++j;
    }
    std::size_t len = j - i;
    if (len == 0 || len > 3 || v > 255) return std::u32string::npos;
    if (len > 1 && t[i] == '0') return std::u32string::npos;
    return j;
}

void scan_ipv4(const std::u32string &t, std::vector<PiiSpan> &out) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!ascii_digit(t[i])) continue;
        if (i > 0 && (ascii_alnum(t[i - 1]) || t[i - 1] == '.')) continue;
        std::size_t j = i;
        bool ok = true;
        for (int k = 0; k < 4 && ok; ++k) {
            if (k > 0) {
                if (j >= t.size() || t[j] != '.') {
                    ok = false;
                    break;
                }
                ++j;
            }
            j = octet(t, j);
            ok = j != std::u32string::npos;
        }
        if (!ok) continue;
        if (j < t.size() && (ascii_alnum(t[j]) || (t[j] == '.' && j + 1 < t.size() && ascii_digit(t[j + 1]))))
            continue;
        out.push_back({i, j, PiiKind::ip});
    }
}

} // namespace

std::string_view pii_kind_name(PiiKind k) {
    switch (k) {
    case PiiKind::email: return "email";
    case PiiKind::phone: return "phone";
    case PiiKind::ip: return "ip";
    }
    return "unknown";
}

std::optional<PiiKind> parse_pii_kind(std::string_view name) {
    for (auto k : {PiiKind::email, PiiKind::phone, PiiKind::ip}) {
        if (pii_kind_name(k) == name) return k;
    }
    return std::nullopt;
}

std::vector<PiiSpan> detect_pii(std::string_view text) {
    auto t = utf8::decode(text);
    std::vector<PiiSpan> cand;
    scan_emails(t, cand);
    scan_phones(t, cand);
    scan_ipv4(t, cand);
    std::sort(cand.begin(), cand.end(), [](const PiiSpan &a, const PiiSpan &b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end > b.end;
        return a.kind < b.kind;
    });
    std::vector<PiiSpan> out;
    std::size_t taken_to = 0;
    for (const auto &c : cand) {
        if (!out.empty() && c.start < taken_to) continue;
        out.push_back(c);
        taken_to = c.end;
    }
    return out;
}

} // namespace webcorp::clean
