#pragma once
// Seeded Monte-Carlo cross-validation of the analytic results: sampled
// mishearings, sampled chain configurations, and synthetic-lexicon cohort
// experiments.
//
// All randomness flows through Rng (std::mt19937_64 with explicit, portable
// mappings to uniform doubles and bounded integers), so identical seeds give
// bit-identical results on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "mishear/cluster.hpp"
#include "mishear/mishearing.hpp"
#include "mishear/profile.hpp"

namespace mishear {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n) by rejection; unbiased.
    std::uint64_t below(std::uint64_t n);

    bool bernoulli(double p) { return unit() < p; }

  private:
    std::mt19937_64 engine_;
};

struct SimulationConfig {
    std::uint64_t seed = 42;
    std::int64_t trials = 1000000;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;

    bool within(double target, double n_sigma = 3.0) const;
};

// Each sound independently replaced by phi(sound) with probability q.
SoundString sample_mishearing(const SoundString& word, double q,
                              const AlterationMap& phi, Rng& rng);

// Draws k ~ Binomial(n, q) and averages 2^(s k); estimates moment_variants.
MonteCarloEstimate estimate_variant_moment(int n, double q, double s,
                                           const SimulationConfig& config);

// Samples site occupancies with probability q and averages the product of
// cluster weights over maximal occupied runs; estimates Z_n.
MonteCarloEstimate estimate_partition(int n, double q,
                                      const ClusterWeightScheme& scheme,
                                      const SimulationConfig& config);

// A lexicon of distinct random words: lengths from the discrete-normalized
// model, sounds uniform on [0, nu), with a prefix trie carrying pass-through
// and exact-ending counts per node.
class SyntheticLexicon {
  public:
    SyntheticLexicon(std::vector<SoundString> words, int nu);

    const std::vector<SoundString>& words() const { return words_; }
    int nu() const { return nu_; }
    int max_word_length() const { return max_length_; }

    struct DepthStats {
        std::uint64_t nodes = 0;         // distinct prefixes of this length
        std::uint64_t through_sum = 0;   // words having any of these prefixes
        std::uint64_t ending_nodes = 0;  // prefixes that are themselves words
    };
    DepthStats depth_stats(int m) const;  // throws if no word of length >= m

    std::uint64_t root_through() const;
    std::uint64_t total_endings() const;

    // Full rebuild check of the trie counters against the word set.
    bool trie_consistent() const;

  private:
    struct Node {
        std::uint32_t through = 0;
        std::uint32_t ending = 0;
        std::vector<std::pair<int, std::uint32_t>> children;  // sound -> node
    };

    void insert(const SoundString& word);

    std::vector<SoundString> words_;
    int nu_ = 0;
    int max_length_ = 0;
    std::vector<Node> nodes_;
};

// Draws profile.lexicon_size distinct words, re-drawing duplicates. Throws
// std::runtime_error if the words cannot be placed within a bounded number of
// attempts (degenerate parameter combinations).
SyntheticLexicon generate_lexicon(const LanguageProfile& profile,
                                  const SimulationConfig& config);

// Mean, over all length-m prefixes realized in the lexicon, of the number of
// words having that prefix. Throws if no word has length >= m.
double empirical_cohort(const SyntheticLexicon& lexicon, int m);

// Fraction of length-m prefixes that are themselves words: the lexicon's own
// measurement of the prefix-word probability at depth m.
double measured_prefix_word_fraction(const SyntheticLexicon& lexicon, int m);

// Upper tail of the chi-square distribution (the p-value of a statistic).
double chi_square_pvalue(double chi2, double dof);

struct LengthGoodnessOfFit {
    double chi2 = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int n_min = 1;  // first length with unsaturated code space
};

// Chi-square comparison of the lexicon's length histogram against the model.
// Lengths whose code space nu^n would be more than 1% occupied by the
// expected counts are excluded (distinctness saturates them) and the
// expectation is renormalized over the kept range; sparse tail bins are
// pooled to expected counts >= 5.
LengthGoodnessOfFit length_goodness_of_fit(const SyntheticLexicon& lexicon,
                                           const LanguageProfile& profile);

}  // namespace mishear
