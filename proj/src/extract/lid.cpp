#include "webcorp/extract/lid.hpp"

#include "webcorp/common/error.hpp"
#include "webcorp/common/strings.hpp"
#include "webcorp/common/unicode.hpp"
#include "webcorp/common/utf8.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace webcorp::extract {

namespace {

bool upper_ascii(char c) {
    return c >= 'A' && c <= 'Z';
}
bool lower_ascii(char c) {
    return c >= 'a' && c <= 'z';
}

} // namespace

bool is_lang_code(std::string_view code) {
    if (code.size() != 8 || code[3] != '_') return false;
    for (int i = 0; i < 3; ++i) {
        if (!lower_ascii(code[i])) return false;
    }
    if (!upper_ascii(code[4])) return false;
    for (int i = 5; i < 8; ++i) {
        if (!lower_ascii(code[i])) return false;
    }
    return true;
}

std::string_view language_part(std::string_view code) {
    auto us = code.find('_');
    return us == std::string_view::npos ? code : code.substr(0, us);
}

LidPrediction LanguageIdentifier::predict(std::string_view text) const {
    if (text.empty()) throw Error("empty input");
    auto dist = distribution(text);
    const auto &labs = labels();
    if (labs.empty()) throw Error("language identifier has no labels");
    std::size_t best = 0;
    for (std::size_t i = 1; i < dist.size(); ++i) {
        if (dist[i] > dist[best]) best = i;
    }
    return {labs[best], std::clamp(dist[best], 0.0, 1.0)};
}

std::vector<std::u32string> NgramLid::features(std::string_view text, int max_order) {
    std::u32string norm;
    norm.reserve(text.size() + 2);
    norm.push_back(U' ');
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = utf8::decode_one(text, pos);
        if (unicode::is_letter(cp)) {
            norm.push_back(unicode::to_lower(cp));
        } else if (norm.back() != U' ') {
            norm.push_back(U' ');
        }
    }
    if (norm.back() != U' ') norm.push_back(U' ');

    std::vector<std::u32string> out;
    if (norm.size() <= 1) return out;
    for (std::size_t i = 0; i < norm.size(); ++i) {
        for (int n = 1; n <= max_order && i + n <= norm.size(); ++n) {
            std::u32string_view g(norm.data() + i, static_cast<std::size_t>(n));
            if (n == 1 && g[0] == U' ') continue;
            // no feature spans a word boundary
            if (n > 1 && g.substr(1, n - 2).find(U' ') != std::u32string_view::npos) break;
            out.emplace_back(g);
        }
    }
    return out;
}

std::size_t NgramLid::label_index(const std::string &label) {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it != labels_.end()) return static_cast<std::size_t>(it - labels_.begin());
    labels_.push_back(label);
    totals_.emplace_back(static_cast<std::size_t>(params_.max_order), 0.0);
    for (auto &[_, v] : counts_) v.push_back(0.0);
    return labels_.size() - 1;
}

void NgramLid::add_training_text(const std::string &label, std::string_view text) {
    if (!is_lang_code(label)) throw ConfigError("bad language label: " + label);
    std::size_t li = label_index(label);
    vocab_.resize(static_cast<std::size_t>(params_.max_order), 0);
    for (auto &f : features(text, params_.max_order)) {
        auto [it, inserted] = counts_.try_emplace(f, labels_.size(), 0.0);
        if (inserted) ++vocab_[f.size() - 1];
        it->second[li] += 1.0;
        totals_[li][f.size() - 1] += 1.0;
    }
}

NgramLid NgramLid::from_directory(const std::string &dir, NgramLidParams params) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ConfigError("LID seed directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no LID seed files in " + dir);
    NgramLid lid(params);
    for (const auto &f : files) lid.add_training_text(f.stem().string(), read_file(f.string()));
    return lid;
}

std::vector<double> NgramLid::distribution(std::string_view text) const {
    const std::size_t L = labels_.size();
    std::vector<double> score(L, 0.0);
    if (L == 0) return score;
    auto feats = features(text, params_.max_order);
    const double a = params_.smoothing;
    for (const auto &f : feats) {
        std::size_t order = f.size() - 1;
        auto it = counts_.find(f);
        // unseen features still get a per-label smoothed estimate
        double v = static_cast<double>(vocab_[order]) + 1.0;
        for (std::size_t l = 0; l < L; ++l) {
            double c = it == counts_.end() ? 0.0 : it->second[l];
            score[l] += std::log((c + a) / (totals_[l][order] + a * v));
        }
    }
    std::vector<double> prob(L, 1.0 / static_cast<double>(L));
    if (feats.empty()) return prob;
    double n = static_cast<double>(feats.size());
    double best = -INFINITY;
    for (auto &s : score) {
        s = params_.sharpness * s / n;
        best = std::max(best, s);
    }
    double sum = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
        prob[l] = std::exp(score[l] - best);
        sum += prob[l];
    }
    for (auto &p : prob) p /= sum;
    return prob;
}

} // namespace webcorp::extract
