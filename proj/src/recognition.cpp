#include "mishear/recognition.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mishear/mishearing.hpp"

namespace mishear {

namespace {

// ln(Lambda p_n) with the continuous normalization; <= 0 means the lexicon is
// not expected to contain words of this length at all.
double log_word_count(const LanguageProfile& profile, int n) {
    GammaWordLengthModel m = profile.model;
    m.normalization = Normalization::continuous;
    return std::log(static_cast<double>(profile.lexicon_size)) + m.log_pmf(n);
}

}  // namespace

double effective_exponent(const LanguageProfile& profile, double q, int n) {
    profile.validate();
    if (n < 1) throw std::invalid_argument("length must be >= 1");
    const double ln_w = log_word_count(profile, n);
    if (ln_w <= 0.0) throw std::domain_error("beyond lexicon support");
    return kappa(q) * n / ln_w;
}

double delta_star(const LanguageProfile& profile, double q) {
    return effective_exponent(profile, q, profile.model.mode_length());
}

int static_crossover(const LanguageProfile& profile, double q) {
    profile.validate();
    if (!(q > 0.0)) throw std::invalid_argument("static crossover needs q > 0");
    bool in_support = false;
    for (int n = 1; n <= profile.model.n_max_eval; ++n) {
        const double ln_w = log_word_count(profile, n);
        if (ln_w <= 0.0) {
            if (in_support) break;  // upper end of the support; no crossing found
            continue;               // below the support of a peaked distribution
        }
        in_support = true;
        if (kappa(q) * n / ln_w >= 1.0) return n;
    }
    throw std::runtime_error("no static crossover in support");
}

StaticAnalysis analyze_static(const LanguageProfile& profile, double q) {
    StaticAnalysis out;
    out.n_star = profile.model.mode_length();
    out.delta_star = delta_star(profile, q);
    out.n_st = static_crossover(profile, q);
    bool in_support = false;
    for (int n = 1; n <= profile.model.n_max_eval; ++n) {
        const double ln_w = log_word_count(profile, n);
        if (ln_w <= 0.0) {
            if (in_support) break;
            continue;
        }
        in_support = true;
        out.delta_series[n] = kappa(q) * n / ln_w;
    }
    return out;
}

void write_delta_csv(std::ostream& out, const StaticAnalysis& analysis) {
    out << "n,delta_n\n";
    char buffer[32];
    for (const auto& [n, d] : analysis.delta_series) {
        const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), d);
        out << n << ',' << std::string_view(buffer, end) << '\n';
    }
}

}  // namespace mishear
