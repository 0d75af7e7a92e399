#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace webcorp::extract {

/// Language label "xxx_Xxxx" (ISO 639-3 + '_' + ISO 15924) and its probability.
struct LidPrediction {
    std::string lang;
    double prob = 0.0;

    bool operator==(const LidPrediction &) const = default;
};

inline constexpr std::string_view kUndetermined = "und_Zzzz";

bool is_lang_code(std::string_view code);
/// "fin_Latn" -> "fin"
std::string_view language_part(std::string_view code);

class LanguageIdentifier {
  public:
    virtual ~LanguageIdentifier() = default;
    [[nodiscard]] virtual const std::vector<std::string> &labels() const = 0;
    /// Probabilities aligned with labels(); sums to 1.
    [[nodiscard]] virtual std::vector<double> distribution(std::string_view text) const = 0;

    /// Top label. Throws Error("empty input") for empty text.
    [[nodiscard]] LidPrediction predict(std::string_view text) const;
};

struct NgramLidParams {
    int max_order = 4;
    double smoothing = 0.5;   // additive smoothing per n-gram count
    double sharpness = 6.0;   // softmax scale on the mean per-feature log-likelihood
};

/// Character n-gram (orders 1..max_order) multinomial classifier. Features
/// are taken from the lowercased text with every non-letter replaced by a
/// space; each word is padded with spaces. Scores are mean log-likelihoods
/// per feature, turned into probabilities with a softmax.
class NgramLid final : public LanguageIdentifier {
  public:
    explicit NgramLid(NgramLidParams params = {}) : params_(params) {}

    void add_training_text(const std::string &label, std::string_view text);
    /// Loads every "<label>.txt" in `dir` as training text.
    static NgramLid from_directory(const std::string &dir, NgramLidParams params = {});

    [[nodiscard]] const std::vector<std::string> &labels() const override { return labels_; }
    [[nodiscard]] std::vector<double> distribution(std::string_view text) const override;

  private:
    std::size_t label_index(const std::string &label);
    static std::vector<std::u32string> features(std::string_view text, int max_order);

    NgramLidParams params_;
    std::vector<std::string> labels_;
    // feature -> per-label count
    std::unordered_map<std::u32string, std::vector<double>> counts_;
    // [label][order-1] total count
    std::vector<std::vector<double>> totals_;
    std::vector<std::size_t> vocab_;  // distinct features per order
};

} // namespace webcorp::extract
