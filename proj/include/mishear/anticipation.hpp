#pragma once
// Cohort-based word anticipation: mean cohort size f_m after m heard sounds,
// the anticipation length, mishearing-aware cohorts g_{m,k} and gbar_m, the
// hammock table, and the mishearing threshold above which anticipation
// disappears.

#include <vector>

#include "mishear/profile.hpp"

namespace mishear {

// f_m = epsilon * tail_sum(m) / pmf(m): mean number of lexicon words having a
// given heard string of m sounds as a prefix. Throws if m outside
// [1, n_max_eval]. (The normalization constant cancels in the ratio.)
double prefix_cohort(const LanguageProfile& profile, int m);

// Smallest m with f_m <= 1: the length at which roughly one candidate word
// remains. Throws std::runtime_error if f never drops to 1.
int anticipation_length(const LanguageProfile& profile);

// g_{m,k} = 2^k f_m: mean cohort compatible with a heard prefix of length m
// containing exactly k mishearings. Throws if k outside [0, m].
double misheard_cohort(const LanguageProfile& profile, int m, int k);

// gbar_m = exp(kappa(q) m) f_m: binomial average of g_{m,k} over k.
double mean_misheard_cohort(const LanguageProfile& profile, double q, int m);

struct MishearingThreshold {
    double q_th = 0.0;     // min_m gbar_m(q_th) = 1
    int m_th = 0;          // argmin_m gbar_m at threshold (smallest on ties)
    double delta_th = 0.0; // effective exponent at (q_th, m_th)
};

// Solves min_m gbar_m(q) = 1 by bisection in q over (0, 1); the minimum is a
// strictly increasing function of q. Requires anticipation to exist at q = 0.
MishearingThreshold mishearing_threshold(const LanguageProfile& profile);

struct HammockRow {
    int m = 0;
    int k = 0;
    double ln_g = 0.0;
};

// Rows (m, k, ln g_{m,k}) for 1 <= m <= m_max, 0 <= k <= m.
std::vector<HammockRow> hammock_rows(const LanguageProfile& profile, int m_max);

struct AnticipationAnalysis {
    std::vector<double> f_series;  // f_series[m-1] = f_m for m = 1..m_max
    int m_ant = 0;
    MishearingThreshold threshold;
};

AnticipationAnalysis analyze_anticipation(const LanguageProfile& profile);

}  // namespace mishear
