#include "mishear/anticipation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mishear/mishearing.hpp"
#include "mishear/recognition.hpp"

namespace mishear {

namespace {

// f_m for m = 1..n_max_eval in one pass. The normalization cancels in
// tail/pmf, so the series is the same in either mode.
std::vector<double> cohort_series(const LanguageProfile& profile) {
    profile.validate();
    const std::vector<double> p = profile.model.pmf_series();
    const int n_max = profile.model.n_max_eval;
    std::vector<double> f(static_cast<std::size_t>(n_max));
    double tail = 0.0;
    for (int m = n_max; m >= 1; --m) {
        tail += p[static_cast<std::size_t>(m - 1)];
        f[static_cast<std::size_t>(m - 1)] =
            profile.epsilon * tail / p[static_cast<std::size_t>(m - 1)];
    }
    return f;
}

// min over m of exp(kappa m) f_m, and the smallest minimizing m.
std::pair<double, int> min_mean_cohort(const std::vector<double>& f, double q) {
    const double k = kappa(q);
    double best = std::numeric_limits<double>::infinity();
    int best_m = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const int m = static_cast<int>(i) + 1;
        const double g = std::exp(k * m) * f[i];
        if (g < best) {
            best = g;
            best_m = m;
        }
    }
    return {best, best_m};
}

}  // namespace

double prefix_cohort(const LanguageProfile& profile, int m) {
    profile.validate();
    if (m < 1 || m > profile.model.n_max_eval)
        throw std::invalid_argument("prefix length outside [1, n_max_eval]");
    return cohort_series(profile)[static_cast<std::size_t>(m - 1)];
}

int anticipation_length(const LanguageProfile& profile) {
    const std::vector<double> f = cohort_series(profile);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] <= 1.0) return static_cast<int>(i) + 1;
    throw std::runtime_error("cohort never shrinks to one word");
}

double misheard_cohort(const LanguageProfile& profile, int m, int k) {
    if (k < 0 || k > m) throw std::invalid_argument("mishearing count outside [0, m]");
    return std::exp2(static_cast<double>(k)) * prefix_cohort(profile, m);
}

double mean_misheard_cohort(const LanguageProfile& profile, double q, int m) {
    return std::exp(kappa(q) * m) * prefix_cohort(profile, m);
}

MishearingThreshold mishearing_threshold(const LanguageProfile& profile) {
    const std::vector<double> f = cohort_series(profile);
    if (min_mean_cohort(f, 0.0).first > 1.0)
        throw std::runtime_error("no anticipation at q = 0");
    if (min_mean_cohort(f, 1.0).first < 1.0)
        throw std::runtime_error("anticipation survives even at q = 1");

    // min_m gbar_m(q) is strictly increasing in q, so bisection applies. The
    // interval is driven far below the 1e-6 tolerance so the minimum at the
    // returned q is equal to 1 to ~1e-9.
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (min_mean_cohort(f, mid).first < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    MishearingThreshold out;
    out.q_th = 0.5 * (lo + hi);
    out.m_th = min_mean_cohort(f, out.q_th).second;
    out.delta_th = effective_exponent(profile, out.q_th, out.m_th);
    return out;
}

std::vector<HammockRow> hammock_rows(const LanguageProfile& profile, int m_max) {
    profile.validate();
    if (m_max < 1 || m_max > profile.model.n_max_eval)
        throw std::invalid_argument("m_max outside [1, n_max_eval]");
    const std::vector<double> f = cohort_series(profile);
    std::vector<HammockRow> rows;
    rows.reserve(static_cast<std::size_t>(m_max) * (m_max + 3) / 2);
    const double ln2 = std::log(2.0);
    for (int m = 1; m <= m_max; ++m) {
        const double ln_f = std::log(f[static_cast<std::size_t>(m - 1)]);
        for (int k = 0; k <= m; ++k) rows.push_back({m, k, ln_f + k * ln2});
    }
    return rows;
}

AnticipationAnalysis analyze_anticipation(const LanguageProfile& profile) {
    AnticipationAnalysis out;
    out.f_series = cohort_series(profile);
    out.m_ant = anticipation_length(profile);
    out.threshold = mishearing_threshold(profile);
    return out;
}

}  // namespace mishear
