#pragma once
// Sound/variant calculus: strings of abstract sounds, the fixed-point-free
// alteration map, binomial mishearing counts, variant-count moments and
// scaling exponents, and explicit variant enumeration for small words.

#include <compare>
#include <set>
#include <vector>

namespace mishear {

// A word as a sequence of abstract sound identifiers in [0, nu).
struct SoundString {
    std::vector<int> sounds;

    int length() const { return static_cast<int>(sounds.size()); }
    auto operator<=>(const SoundString&) const = default;
};

// Total map sigma -> phi(sigma) with phi(sigma) != sigma: every sound is
// misheard in exactly one particular way.
class AlterationMap {
  public:
    // phi(sigma) = (sigma + 1) mod nu; the default map. Any fixed-point-free
    // choice yields identical statistics.
    static AlterationMap cyclic(int nu);

    // Explicit table; validates range and absence of fixed points.
    explicit AlterationMap(std::vector<int> table);

    int apply(int sound) const;
    int inventory_size() const { return static_cast<int>(table_.size()); }

  private:
    std::vector<int> table_;
};

// Binomial law C(n,k) q^k (1-q)^(n-k). Throws if k outside [0, n].
double mishearing_count_pmf(int n, double q, int k);

double kappa(double q);                     // ln(1 + q)
double kappa_bar(double q);                 // q ln 2
double lambda_moment(double s, double q);   // ln(1 + (2^s - 1) q)

// Mean number of variants of a length-n word: exp(kappa * n) = (1+q)^n.
double average_variants(int n, double q);

// Moment of order s of the variant count: exp(lambda(s) * n).
double moment_variants(int n, double q, double s);

// Free-lexicon scaling exponent kappa / ln(nu). Requires nu >= 2.
double delta_exponent(double q, int nu);

// All 2^k variants obtained by either keeping or altering the sound at each
// of the misheard positions (0-based indices into the word). Throws on an
// out-of-range position.
std::set<SoundString> enumerate_variants(const SoundString& word,
                                         const std::set<int>& misheard_positions,
                                         const AlterationMap& phi);

}  // namespace mishear
