#include "webcorp/extract/mt_markup.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/extract/html.hpp"

namespace webcorp::extract {

MtDetector MtDetector::parse(const std::vector<std::string> &lines) {
    std::vector<MtIndicator> out;
    for (const auto &raw : lines) {
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ConfigError("bad MT indicator: " + raw);
        auto kind = to_lower_ascii(trim(line.substr(0, colon)));
        std::string_view body = trim(line.substr(colon + 1));
        if (body.empty()) throw ConfigError("empty MT indicator: " + raw);
        MtIndicator ind{MtIndicator::Kind::tag, to_lower_ascii(body), {}};
        if (kind == "tag") {
            ind.kind = MtIndicator::Kind::tag;
        } else if (kind == "attr") {
            if (auto eq = body.find('='); eq != std::string_view::npos) {
                ind.kind = MtIndicator::Kind::attr_value;
                ind.name = to_lower_ascii(trim(body.substr(0, eq)));
                ind.value = std::string(trim(body.substr(eq + 1)));
            } else {
                ind.kind = MtIndicator::Kind::attr;
            }
        } else if (kind == "class") {
            ind.kind = MtIndicator::Kind::class_token;
        } else if (kind == "id") {
            ind.kind = MtIndicator::Kind::id;
        } else {
            throw ConfigError("unknown MT indicator kind: " + raw);
        }
        out.push_back(std::move(ind));
    }
    return MtDetector(std::move(out));
}

MtDetector MtDetector::load(const std::string &path) {
    return parse(read_list_file(path));
}

bool MtDetector::detect(std::string_view html) const {
    if (indicators_.empty()) return false;
    HtmlTokenizer tz(html);
    HtmlToken tok;
    while (tz.next(tok)) {
        if (tok.kind != HtmlToken::Kind::start_tag) continue;
        for (const auto &ind : indicators_) {
            switch (ind.kind) {
            case MtIndicator::Kind::tag:
                if (tok.name == ind.name) return true;
                break;
            case MtIndicator::Kind::attr:
                if (tok.attr(ind.name)) return true;
                break;
            case MtIndicator::Kind::attr_value:
                if (const auto *v = tok.attr(ind.name); v && icontains(*v, ind.value)) return true;
                break;
            case MtIndicator::Kind::class_token:
                if (const auto *v = tok.attr("class")) {
                    for (auto t : split_whitespace(*v)) {
                        if (iequals(t, ind.name)) return true;
                    }
                }
                break;
            case MtIndicator::Kind::id:
                if (const auto *v = tok.attr("id"); v && iequals(trim(*v), ind.name)) return true;
                break;
            }
        }
    }
    return false;
}

} // namespace webcorp::extract
