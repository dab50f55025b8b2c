#include "mishear/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include <boost/math/special_functions/gamma.hpp>

namespace mishear {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

bool MonteCarloEstimate::within(double target, double n_sigma) const {
    if (std_error == 0.0) return mean == target;
    return std::fabs(mean - target) <= n_sigma * std_error;
}

SoundString sample_mishearing(const SoundString& word, double q,
                              const AlterationMap& phi, Rng& rng) {
    SoundString heard = word;
    for (int& s : heard.sounds)
        if (rng.bernoulli(q)) s = phi.apply(s);
    return heard;
}

namespace {

MonteCarloEstimate summarize(double sum, double sum_sq, std::int64_t trials) {
    MonteCarloEstimate est;
    est.trials = trials;
    est.mean = sum / static_cast<double>(trials);
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(trials) - est.mean * est.mean);
    est.std_error = std::sqrt(var / static_cast<double>(trials));
    return est;
}

}  // namespace

MonteCarloEstimate estimate_variant_moment(int n, double q, double s,
                                           const SimulationConfig& config) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    if (config.trials < 1000) throw std::invalid_argument("need at least 1e3 trials");
    Rng rng(config.seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t t = 0; t < config.trials; ++t) {
        int k = 0;
        for (int i = 0; i < n; ++i) k += rng.bernoulli(q) ? 1 : 0;
        const double x = std::exp2(s * k);
        sum += x;
        sum_sq += x * x;
    }
    return summarize(sum, sum_sq, config.trials);
}

MonteCarloEstimate estimate_partition(int n, double q,
                                      const ClusterWeightScheme& scheme,
                                      const SimulationConfig& config) {
    if (n < 1) throw std::invalid_argument("chain length must be >= 1");
    if (config.trials < 10000) throw std::invalid_argument("need at least 1e4 trials");
    Rng rng(config.seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t t = 0; t < config.trials; ++t) {
        double w = 1.0;
        int run = 0;
        for (int site = 0; site < n; ++site) {
            if (rng.bernoulli(q)) {
                ++run;
            } else {
                if (run > 0) w *= scheme.weight(run);
                run = 0;
            }
        }
        if (run > 0) w *= scheme.weight(run);
        sum += w;
        sum_sq += w * w;
    }
    return summarize(sum, sum_sq, config.trials);
}

SyntheticLexicon::SyntheticLexicon(std::vector<SoundString> words, int nu)
    : words_(std::move(words)), nu_(nu) {
    nodes_.emplace_back();  // root
    for (const SoundString& w : words_) {
        max_length_ = std::max(max_length_, w.length());
        insert(w);
    }
}

void SyntheticLexicon::insert(const SoundString& word) {
    std::uint32_t node = 0;
    nodes_[0].through++;
    for (const int sound : word.sounds) {
        auto& children = nodes_[node].children;
        auto it = std::find_if(children.begin(), children.end(),
                               [sound](const auto& c) { return c.first == sound; });
        std::uint32_t next;
        if (it == children.end()) {
            next = static_cast<std::uint32_t>(nodes_.size());
            children.emplace_back(sound, next);
            nodes_.emplace_back();
        } else {
            next = it->second;
        }
        nodes_[next].through++;
        node = next;
    }
    nodes_[node].ending++;
}

SyntheticLexicon::DepthStats SyntheticLexicon::depth_stats(int m) const {
    if (m < 1) throw std::invalid_argument("prefix length must be >= 1");
    if (m > max_length_) throw std::invalid_argument("no word of length >= requested prefix");
    std::vector<std::uint32_t> frontier{0};
    for (int depth = 0; depth < m; ++depth) {
        std::vector<std::uint32_t> next;
        next.reserve(frontier.size() * 2);
        for (const std::uint32_t id : frontier)
            for (const auto& [sound, child] : nodes_[id].children) next.push_back(child);
        frontier = std::move(next);
    }
    DepthStats stats;
    for (const std::uint32_t id : frontier) {
        stats.nodes++;
        stats.through_sum += nodes_[id].through;
        if (nodes_[id].ending > 0) stats.ending_nodes++;
    }
    return stats;
}

std::uint64_t SyntheticLexicon::root_through() const { return nodes_[0].through; }

std::uint64_t SyntheticLexicon::total_endings() const {
    std::uint64_t sum = 0;
    for (const Node& node : nodes_) sum += node.ending;
    return sum;
}

bool SyntheticLexicon::trie_consistent() const {
    SyntheticLexicon rebuilt(words_, nu_);
    if (rebuilt.nodes_.size() != nodes_.size()) return false;
    if (root_through() != words_.size()) return false;
    if (total_endings() != words_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].through != rebuilt.nodes_[i].through) return false;
        if (nodes_[i].ending != rebuilt.nodes_[i].ending) return false;
    }
    return true;
}

SyntheticLexicon generate_lexicon(const LanguageProfile& profile,
                                  const SimulationConfig& config) {
    profile.validate();
    GammaWordLengthModel model = profile.model;
    model.normalization = Normalization::discrete;
    const std::vector<double> pmf = model.pmf_series();
    std::vector<double> cdf(pmf.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        acc += pmf[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    Rng rng(config.seed);
    struct Hash {
        std::size_t operator()(const std::vector<int>& v) const {
            std::size_t h = 1469598103934665603ull;
            for (const int x : v) {
                h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_set<std::vector<int>, Hash> seen;
    std::vector<SoundString> words;
    words.reserve(static_cast<std::size_t>(profile.lexicon_size));
    const std::int64_t max_attempts = 200 * profile.lexicon_size;
    std::int64_t attempts = 0;
    while (static_cast<std::int64_t>(words.size()) < profile.lexicon_size) {
        if (++attempts > max_attempts)
            throw std::runtime_error("cannot place distinct words: lexicon too dense");
        const double u = rng.unit();
        const int n = static_cast<int>(
                          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) + 1;
        std::vector<int> sounds(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            sounds[static_cast<std::size_t>(i)] =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(profile.sounds)));
        if (seen.insert(sounds).second) words.push_back(SoundString{std::move(sounds)});
    }
    return SyntheticLexicon(std::move(words), profile.sounds);
}

double empirical_cohort(const SyntheticLexicon& lexicon, int m) {
    const auto stats = lexicon.depth_stats(m);
    return static_cast<double>(stats.through_sum) / static_cast<double>(stats.nodes);
}

double measured_prefix_word_fraction(const SyntheticLexicon& lexicon, int m) {
    const auto stats = lexicon.depth_stats(m);
    return static_cast<double>(stats.ending_nodes) / static_cast<double>(stats.nodes);
}

double chi_square_pvalue(double chi2, double dof) {
    if (chi2 < 0.0 || dof <= 0.0) throw std::invalid_argument("bad chi-square inputs");
    return boost::math::gamma_q(0.5 * dof, 0.5 * chi2);
}

LengthGoodnessOfFit length_goodness_of_fit(const SyntheticLexicon& lexicon,
                                           const LanguageProfile& profile) {
    GammaWordLengthModel model = profile.model;
    model.normalization = Normalization::discrete;
    const std::vector<double> pmf = model.pmf_series();
    const double lambda = static_cast<double>(profile.lexicon_size);

    std::vector<std::uint64_t> observed(pmf.size() + 1, 0);
    for (const SoundString& w : lexicon.words())
        if (w.length() <= static_cast<int>(pmf.size()))
            observed[static_cast<std::size_t>(w.length())]++;

    // Distinctness caps the number of words of length n at nu^n; keep only
    // lengths whose code space is at most 1% occupied by the expectation.
    const double ln_nu = std::log(static_cast<double>(lexicon.nu()));
    int n_min = 1;
    while (n_min <= static_cast<int>(pmf.size())) {
        const double ln_capacity = n_min * ln_nu;
        const double expected = lambda * pmf[static_cast<std::size_t>(n_min - 1)];
        if (std::log(std::max(expected, 1e-300) * 100.0) <= ln_capacity) break;
        ++n_min;
    }
    if (n_min > static_cast<int>(pmf.size()))
        throw std::runtime_error("no unsaturated lengths for goodness of fit");

    double kept_expected = 0.0;
    std::uint64_t kept_observed = 0;
    for (int n = n_min; n <= static_cast<int>(pmf.size()); ++n) {
        kept_expected += lambda * pmf[static_cast<std::size_t>(n - 1)];
        kept_observed += observed[static_cast<std::size_t>(n)];
    }
    const double scale = static_cast<double>(kept_observed) / kept_expected;

    // Pool tail bins to expected counts >= 5.
    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double o_acc = 0.0, e_acc = 0.0;
    for (int n = n_min; n <= static_cast<int>(pmf.size()); ++n) {
        o_acc += static_cast<double>(observed[static_cast<std::size_t>(n)]);
        e_acc += scale * lambda * pmf[static_cast<std::size_t>(n - 1)];
        if (e_acc >= 5.0) {
            bins.emplace_back(o_acc, e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !bins.empty()) {
        bins.back().first += o_acc;
        bins.back().second += e_acc;
    }
    if (bins.size() < 2) throw std::runtime_error("too few bins for goodness of fit");

    LengthGoodnessOfFit result;
    result.n_min = n_min;
    for (const auto& [o, e] : bins) result.chi2 += (o - e) * (o - e) / e;
    result.dof = static_cast<int>(bins.size()) - 1;
    result.p_value = chi_square_pvalue(result.chi2, result.dof);
    return result;
}

}  // namespace mishear
