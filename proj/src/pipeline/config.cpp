#include "webcorp/pipeline/config.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/hash.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/url.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

namespace webcorp::pipeline {

namespace fs = std::filesystem;

clean::Thresholds ThresholdConfig::gates() const {
    clean::Thresholds t;
    t.lid_prob = lid_prob;
    t.wds = wds;
    t.doc_len = static_cast<std::size_t>(doc_len);
    t.words_per_seg = words_per_seg;
    t.cjk_chars_per_seg = cjk_chars;
    return t;
}

PipelineConfig default_config() {
    const fs::path base = default_resource_dir();
    PipelineConfig c;
    auto &r = c.resources;
    r.trash_list = (base / "trash_urls.txt").string();
    r.adult_list = (base / "ut1" / "adult").string();
    r.public_suffix = (base / "public_suffix_list.dat").string();
    r.country_tlds = (base / "cctlds.txt").string();
    r.stopwords = (base / "stopwords").string();
    r.lid_seeds = (base / "lid").string();
    r.lexicons = (base / "lexicons").string();
    r.mt_indicators = (base / "mt_indicators.txt").string();
    r.srx = (base / "srx" / "default.srx").string();
    return c;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct ResourceKey {
    const char *key;
    std::string ResourcePaths::*field;
    bool directory;
};

const std::vector<ResourceKey> &resource_keys() {
    static const std::vector<ResourceKey> keys = {
        {"trash_list", &ResourcePaths::trash_list, false},
        {"adult_list", &ResourcePaths::adult_list, true},
        {"public_suffix", &ResourcePaths::public_suffix, false},
        {"country_tlds", &ResourcePaths::country_tlds, false},
        {"stopwords", &ResourcePaths::stopwords, true},
        {"lid_seeds", &ResourcePaths::lid_seeds, true},
        {"lexicons", &ResourcePaths::lexicons, true},
        {"mt_indicators", &ResourcePaths::mt_indicators, false},
        {"srx", &ResourcePaths::srx, false},
    };
    return keys;
}

struct BoolKey {
    const char *key;
    bool StageToggles::*field;
};

const std::vector<BoolKey> &stage_keys() {
    static const std::vector<BoolKey> keys = {
        {"trash", &StageToggles::trash},         {"mt_markup", &StageToggles::mt_markup},
        {"lid", &StageToggles::lid},             {"dedup", &StageToggles::dedup},
        {"clean", &StageToggles::clean},         {"robots", &StageToggles::robots},
        {"wds", &StageToggles::wds},             {"doc_length", &StageToggles::doc_length},
        {"seg_length", &StageToggles::seg_length}, {"adult_url", &StageToggles::adult_url},
    };
    return keys;
}

class Validator {
  public:
    std::vector<std::string> errors;

    std::optional<bool> boolean(const std::string &where, const std::string &v) {
        auto s = to_lower_ascii(trim(v));
        if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
        if (s == "false" || s == "no" || s == "off" || s == "0") return false;
        errors.push_back(where + ": expected a boolean, got '" + v + "'");
        return std::nullopt;
    }

    std::optional<double> number(const std::string &where, const std::string &v, double lo, double hi) {
        auto s = trim(v);
        double d = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), d);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
            errors.push_back(where + ": expected a number, got '" + v + "'");
            return std::nullopt;
        }
        if (!(d >= lo && d <= hi)) {
            errors.push_back(where + ": " + std::string(s) + " out of range [" + fmt_double(lo) + ", " +
                             fmt_double(hi) + "]");
            return std::nullopt;
        }
        return d;
    }

    std::optional<std::uint64_t> integer(const std::string &where, const std::string &v, std::uint64_t lo,
                                         std::uint64_t hi) {
        auto s = trim(v);
        std::uint64_t n = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), n);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
            errors.push_back(where + ": expected a non-negative integer, got '" + v + "'");
            return std::nullopt;
        }
        if (n < lo || n > hi) {
            errors.push_back(where + ": " + std::string(s) + " out of range [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
            return std::nullopt;
        }
        return n;
    }
};

std::string resolve(const std::string &base, const std::string &p) {
    if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base) / p).lexically_normal().string();
}

std::string env_name(const char *key) {
    std::string n = "WEBCORP_";
    for (const char *c = key; *c; ++c) n.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*c))));
    return n;
}

} // namespace

PipelineConfig validate_config(std::string_view text, const std::string &base_dir, bool check_files) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    PipelineConfig c = default_config();
    Validator v;
    static const std::map<std::string, int> sections = {{"collections", 0}, {"stages", 1}, {"thresholds", 2},
                                                        {"resources", 3},   {"run", 4},    {"output", 5}};
    for (const auto &[section, body] : tree) {
        auto sit = sections.find(section);
        if (sit == sections.end()) {
            if (body.empty() && !body.data().empty())
                v.errors.push_back("unknown key '" + section + "' outside any section");
            else
                v.errors.push_back("unknown section [" + section + "]");
            continue;
        }
        for (const auto &[key, node] : body) {
            const std::string where = section + "." + key;
            const std::string value = node.get_value<std::string>();
            bool known = true;
            switch (sit->second) {
            case 0: {
                CollectionInput in;
                in.label = key;
                for (auto p : split(value, ',')) {
                    auto t = trim(p);
                    if (!t.empty()) in.paths.push_back(resolve(base_dir, std::string(t)));
                }
                if (in.paths.empty()) v.errors.push_back(where + ": no input paths");
                c.collections.push_back(std::move(in));
                break;
            }
            case 1: {
                known = false;
                for (const auto &k : stage_keys()) {
                    if (key != k.key) continue;
                    known = true;
                    if (auto b = v.boolean(where, value)) c.stages.*(k.field) = *b;
                }
                break;
            }
            case 2: {
                auto &t = c.thresholds;
                if (key == "lid_prob") {
                    if (auto d = v.number(where, value, 0.0, 1.0)) t.lid_prob = *d;
                } else if (key == "jaccard") {
                    if (auto d = v.number(where, value, 0.0, 1.0)) t.jaccard = *d;
                } else if (key == "wds") {
                    if (auto d = v.number(where, value, 0.0, 10.0)) t.wds = *d;
                } else if (key == "doc_len") {
                    if (auto n = v.integer(where, value, 0, 100000000)) t.doc_len = *n;
                } else if (key == "words_per_seg") {
                    if (auto d = v.number(where, value, 0.0, 10000.0)) t.words_per_seg = *d;
                } else if (key == "cjk_chars") {
                    if (auto d = v.number(where, value, 0.0, 100000.0)) t.cjk_chars = *d;
                } else if (key == "pair_score") {
                    if (auto d = v.number(where, value, 0.0, 1.0)) t.pair_score = *d;
                } else {
                    known = false;
                }
                break;
            }
            case 3: {
                known = false;
                for (const auto &k : resource_keys()) {
                    if (key != k.key) continue;
                    known = true;
                    c.resources.*(k.field) = resolve(base_dir, std::string(trim(value)));
                }
                break;
            }
            case 4:
                if (key == "shards") {
                    if (auto n = v.integer(where, value, 1, 1024)) c.shards = *n;
                } else if (key == "seed") {
                    if (auto n = v.integer(where, value, 0, UINT64_MAX)) c.seed = *n;
                } else {
                    known = false;
                }
                break;
            case 5:
                if (key == "dir") {
                    c.output_dir = resolve(base_dir, std::string(trim(value)));
                } else if (key == "work_dir") {
                    c.work_dir = resolve(base_dir, std::string(trim(value)));
                } else {
                    known = false;
                }
                break;
            }
            if (!known) v.errors.push_back("unknown key '" + key + "' in [" + section + "]");
        }
    }

    for (const auto &k : resource_keys()) {
        if (const char *env = std::getenv(env_name(k.key).c_str()); env) c.resources.*(k.field) = env;
    }

    if (check_files) {
        for (const auto &k : resource_keys()) {
            const auto &p = c.resources.*(k.field);
            if (p.empty()) continue;
            bool ok = k.directory ? fs::is_directory(p) : fs::is_regular_file(p);
            if (!ok) v.errors.push_back(std::string("resources.") + k.key + ": missing " +
                                        (k.directory ? "directory" : "file") + " '" + p + "'");
        }
        for (const auto &col : c.collections) {
            for (const auto &p : col.paths) {
                if (!fs::exists(p)) v.errors.push_back("collections." + col.label + ": missing input '" + p + "'");
            }
        }
    }

    if (!v.errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto &e : v.errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return c;
}

PipelineConfig load_config(const std::string &path, bool check_files) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error &e) {
        throw ConfigError(e.what());
    }
    return validate_config(text, fs::path(path).parent_path().string(), check_files);
}

std::string to_ini(const PipelineConfig &c) {
    std::ostringstream out;
    out << "[collections]\n";
    for (const auto &col : c.collections) {
        out << col.label << " = ";
        for (std::size_t i = 0; i < col.paths.size(); ++i) out << (i ? ", " : "") << col.paths[i];
        out << '\n';
    }
    out << "\n[stages]\n";
    for (const auto &k : stage_keys()) out << k.key << " = " << (c.stages.*(k.field) ? "true" : "false") << '\n';
    const auto &t = c.thresholds;
    out << "\n[thresholds]\n"
        << "lid_prob = " << fmt_double(t.lid_prob) << '\n'
        << "jaccard = " << fmt_double(t.jaccard) << '\n'
        << "wds = " << fmt_double(t.wds) << '\n'
        << "doc_len = " << t.doc_len << '\n'
        << "words_per_seg = " << fmt_double(t.words_per_seg) << '\n'
        << "cjk_chars = " << fmt_double(t.cjk_chars) << '\n'
        << "pair_score = " << fmt_double(t.pair_score) << '\n';
    out << "\n[resources]\n";
    for (const auto &k : resource_keys()) out << k.key << " = " << c.resources.*(k.field) << '\n';
    out << "\n[run]\nshards = " << c.shards << "\nseed = " << c.seed << '\n';
    out << "\n[output]\ndir = " << c.output_dir << "\nwork_dir = " << c.work_dir << '\n';
    return out.str();
}

std::string config_hash(const PipelineConfig &c) {
    auto copy = c;
    copy.shards = 1;
    copy.output_dir.clear();
    copy.work_dir.clear();
    return sha256_hex(to_ini(copy));
}

} // namespace webcorp::pipeline
