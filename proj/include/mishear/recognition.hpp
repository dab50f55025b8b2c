#pragma once
// Static easy-to-hard analysis: effective exponent delta_n and the static
// crossover length n_st where decryption turns hard.

#include <iosfwd>
#include <map>

#include "mishear/profile.hpp"

namespace mishear {

// delta_n = kappa(q) * n / ln(Lambda p_n), continuous normalization.
// Throws std::domain_error ("beyond lexicon support") when Lambda p_n <= 1;
// this happens both deep in the tail and, for sharply peaked length
// distributions, at very short lengths.
double effective_exponent(const LanguageProfile& profile, double q, int n);

// delta_n evaluated at the most probable word length.
double delta_star(const LanguageProfile& profile, double q);

// Smallest length n with delta_n >= 1, scanning upward across the support
// interval { n : Lambda p_n > 1 }. Lengths below the support (possible for
// peaked distributions) are skipped; if the support ends before a crossing
// the function throws std::runtime_error ("no static crossover in support").
int static_crossover(const LanguageProfile& profile, double q);

struct StaticAnalysis {
    std::map<int, double> delta_series;  // n -> delta_n over the support
    double delta_star = 0.0;
    int n_star = 0;
    int n_st = 0;
};

StaticAnalysis analyze_static(const LanguageProfile& profile, double q);

// CSV with header "n,delta_n".
void write_delta_csv(std::ostream& out, const StaticAnalysis& analysis);

}  // namespace mishear
