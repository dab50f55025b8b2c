#include <doctest.h>

#include <cmath>

#include "mishear/anticipation.hpp"
#include "mishear/mishearing.hpp"
#include "mishear/montecarlo.hpp"
#include "mishear/profile.hpp"

using namespace mishear;

namespace {

LanguageProfile english_profile() {
    for (const auto& p : builtin_profiles())
        if (p.name == "English") return p;
    throw std::logic_error("missing profile");
}

}  // namespace

TEST_CASE("rng determinism and range") {
    Rng a(123456789), b(123456789);
    for (int i = 0; i < 1000; ++i) {
        const double x = a.unit();
        CHECK(x == b.unit());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    Rng c(7);
    for (int i = 0; i < 1000; ++i) CHECK(c.below(13) < 13);
}

TEST_CASE("sample_mishearing limits") {
    const AlterationMap phi = AlterationMap::cyclic(20);
    const SoundString word{{1, 5, 9, 13, 17}};
    Rng rng(99);
    CHECK(sample_mishearing(word, 0.0, phi, rng) == word);
    SoundString all_altered = word;
    for (int& s : all_altered.sounds) s = phi.apply(s);
    CHECK(sample_mishearing(word, 1.0, phi, rng) == all_altered);
}

TEST_CASE("sampled mishearing count matches the binomial mean") {
    const AlterationMap phi = AlterationMap::cyclic(20);
    SoundString word;
    word.sounds.assign(10, 3);
    Rng rng(42);
    const std::int64_t trials = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        const SoundString heard = sample_mishearing(word, 0.2, phi, rng);
        int changed = 0;
        for (std::size_t i = 0; i < heard.sounds.size(); ++i)
            changed += heard.sounds[i] != word.sounds[i] ? 1 : 0;
        sum += changed;
        sum_sq += static_cast<double>(changed) * changed;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
    CHECK(std::fabs(mean - 2.0) <= 3.0 * se);
}

TEST_CASE("variant moment estimator") {
    const MonteCarloEstimate zero_order =
        estimate_variant_moment(10, 0.2, 0.0, {42, 10000});
    CHECK(zero_order.mean == 1.0);
    CHECK(zero_order.std_error == 0.0);

    const MonteCarloEstimate first =
        estimate_variant_moment(10, 0.2, 1.0, {42, 1000000});
    CHECK(first.within(6.1917364224));

    const MonteCarloEstimate second =
        estimate_variant_moment(8, 0.3, 2.0, {42, 1000000});
    CHECK(second.within(moment_variants(8, 0.3, 2.0)));
    CHECK(second.within(169.83563041));

    CHECK_THROWS_AS(estimate_variant_moment(10, 0.2, 1.0, {42, 10}),
                    std::invalid_argument);
}

TEST_CASE("estimator outputs are reproducible bit for bit") {
    const MonteCarloEstimate a = estimate_variant_moment(10, 0.2, 1.0, {7, 20000});
    const MonteCarloEstimate b = estimate_variant_moment(10, 0.2, 1.0, {7, 20000});
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const MonteCarloEstimate c =
        estimate_partition(6, 0.4, ClusterWeightScheme::custom({2, 3, 4, 5, 6, 7}), {11, 10000});
    const MonteCarloEstimate d =
        estimate_partition(6, 0.4, ClusterWeightScheme::custom({2, 3, 4, 5, 6, 7}), {11, 10000});
    CHECK(c.mean == d.mean);
    CHECK(c.std_error == d.std_error);
}

TEST_CASE("partition estimator") {
    const MonteCarloEstimate ones =
        estimate_partition(9, 0.3, ClusterWeightScheme::exponential(1.0), {42, 10000});
    CHECK(ones.mean == 1.0);
    CHECK(ones.std_error == 0.0);

    const MonteCarloEstimate table =
        estimate_partition(3, 0.5, ClusterWeightScheme::custom({2, 3, 4}), {42, 1000000});
    CHECK(table.within(2.625));

    const MonteCarloEstimate expo =
        estimate_partition(12, 0.2, ClusterWeightScheme::exponential(2.0), {42, 1000000});
    CHECK(expo.within(std::pow(1.2, 12)));
}

TEST_CASE("estimators stay within three standard errors across seeds") {
    int ok_moment = 0, ok_partition = 0, ok_mishear = 0;
    const AlterationMap phi = AlterationMap::cyclic(20);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        if (estimate_variant_moment(10, 0.2, 1.0, {seed, 10000})
                .within(6.1917364224))
            ++ok_moment;
        if (estimate_partition(3, 0.5, ClusterWeightScheme::custom({2, 3, 4}), {seed, 10000})
                .within(2.625))
            ++ok_partition;
        SoundString word;
        word.sounds.assign(10, 0);
        Rng rng(seed);
        double sum = 0.0, sum_sq = 0.0;
        for (int t = 0; t < 10000; ++t) {
            const SoundString heard = sample_mishearing(word, 0.2, phi, rng);
            int changed = 0;
            for (const int s : heard.sounds) changed += s != 0 ? 1 : 0;
            sum += changed;
            sum_sq += static_cast<double>(changed) * changed;
        }
        const double mean = sum / 10000.0;
        const double se = std::sqrt((sum_sq / 10000.0 - mean * mean) / 10000.0);
        if (std::fabs(mean - 2.0) <= 3.0 * se) ++ok_mishear;
    }
    CHECK(ok_moment >= 99);
    CHECK(ok_partition >= 99);
    CHECK(ok_mishear >= 99);
}

TEST_CASE("synthetic lexicon generation") {
    LanguageProfile tiny = english_profile();
    tiny.lexicon_size = 1;
    const SyntheticLexicon single = generate_lexicon(tiny, {42, 0});
    CHECK(single.words().size() == 1);

    LanguageProfile p = english_profile();
    p.lexicon_size = 100000;
    const SyntheticLexicon lexicon = generate_lexicon(p, {42, 0});
    CHECK(lexicon.words().size() == 100000);
    CHECK(lexicon.root_through() == 100000);
    CHECK(lexicon.total_endings() == 100000);
    CHECK(lexicon.trie_consistent());

    // distinctness caps short words at the code-space size
    const auto stats1 = lexicon.depth_stats(1);
    CHECK(stats1.nodes <= 20);
    CHECK(stats1.through_sum == 100000);

    // all first sounds in use: mean length-1 cohort is Lambda / nu
    CHECK(empirical_cohort(lexicon, 1) ==
          doctest::Approx(100000.0 / static_cast<double>(stats1.nodes)).epsilon(1e-12));

    CHECK_THROWS_AS(empirical_cohort(lexicon, lexicon.max_word_length() + 1),
                    std::invalid_argument);
}

TEST_CASE("impossible lexicons are rejected") {
    LanguageProfile p = english_profile();
    p.sounds = 2;
    p.lexicon_size = 100000;  // only ~2^n short words exist; far too dense
    p.model = GammaWordLengthModel{4.4, 1.8, 8, Normalization::discrete};
    CHECK_THROWS_AS(generate_lexicon(p, {42, 0}), std::runtime_error);
}

TEST_CASE("lexicon length histogram follows the model off saturation") {
    LanguageProfile p = english_profile();
    const SyntheticLexicon lexicon = generate_lexicon(p, {42, 0});
    const LengthGoodnessOfFit fit = length_goodness_of_fit(lexicon, p);
    // lengths 1..4 oversubscribe a 20-sound code space at this lexicon size
    CHECK(fit.n_min == 5);
    CHECK(fit.dof > 10);
    CHECK(fit.p_value >= 0.01);
}

TEST_CASE("uniqueness point is consistent with the measured prefix-word fraction") {
    LanguageProfile p = english_profile();
    const SyntheticLexicon lexicon = generate_lexicon(p, {42, 0});

    const double eps_hat = measured_prefix_word_fraction(lexicon, p.model.mode_length());
    CHECK(eps_hat > 0.0);
    CHECK(eps_hat < 1.0);

    LanguageProfile self = p;
    self.epsilon = eps_hat;
    const int m_analytic = anticipation_length(self);

    int m_empirical = -1;
    for (int m = 1; m <= lexicon.max_word_length(); ++m)
        if (empirical_cohort(lexicon, m) <= 1.0 + 1e-12) {
            m_empirical = m;
            break;
        }
    REQUIRE(m_empirical > 0);
    CHECK(std::abs(m_empirical - m_analytic) <= 1);
}

TEST_CASE("chi-square tail probabilities") {
    CHECK(chi_square_pvalue(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
    // known quantile: P(chi2_1 > 3.841) ~ 0.05
    CHECK(chi_square_pvalue(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_pvalue(11.07049769351635, 5.0) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK_THROWS_AS(chi_square_pvalue(-1.0, 3.0), std::invalid_argument);
}
