#include "mishear/mishearing.hpp"

#include <cmath>
#include <stdexcept>

namespace mishear {

AlterationMap AlterationMap::cyclic(int nu) {
    if (nu < 2) throw std::invalid_argument("alteration map needs at least 2 sounds");
    std::vector<int> table(static_cast<std::size_t>(nu));
    for (int s = 0; s < nu; ++s) table[static_cast<std::size_t>(s)] = (s + 1) % nu;
    return AlterationMap(std::move(table));
}

AlterationMap::AlterationMap(std::vector<int> table) : table_(std::move(table)) {
    if (table_.size() < 2) throw std::invalid_argument("alteration map needs at least 2 sounds");
    for (std::size_t s = 0; s < table_.size(); ++s) {
        const int t = table_[s];
        if (t < 0 || t >= static_cast<int>(table_.size()))
            throw std::invalid_argument("alteration map target out of range");
        if (t == static_cast<int>(s))
            throw std::invalid_argument("alteration map must have no fixed point");
    }
}

int AlterationMap::apply(int sound) const {
    if (sound < 0 || sound >= static_cast<int>(table_.size()))
        throw std::invalid_argument("sound identifier out of range");
    return table_[static_cast<std::size_t>(sound)];
}

double mishearing_count_pmf(int n, double q, int k) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    if (k < 0 || k > n) throw std::invalid_argument("mishearing count outside [0, n]");
    if (q == 0.0) return k == 0 ? 1.0 : 0.0;
    if (q == 1.0) return k == n ? 1.0 : 0.0;
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_choose + k * std::log(q) + (n - k) * std::log1p(-q));
}

double kappa(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    return std::log1p(q);
}

double kappa_bar(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    return q * std::log(2.0);
}

double lambda_moment(double s, double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    return std::log1p((std::exp2(s) - 1.0) * q);
}

double average_variants(int n, double q) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    return std::exp(kappa(q) * n);
}

double moment_variants(int n, double q, double s) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    return std::exp(lambda_moment(s, q) * n);
}

double delta_exponent(double q, int nu) {
    if (nu < 2) throw std::invalid_argument("nu must be >= 2");
    return kappa(q) / std::log(static_cast<double>(nu));
}

std::set<SoundString> enumerate_variants(const SoundString& word,
                                         const std::set<int>& misheard_positions,
                                         const AlterationMap& phi) {
    std::vector<int> positions(misheard_positions.begin(), misheard_positions.end());
    for (const int pos : positions)
        if (pos < 0 || pos >= word.length())
            throw std::invalid_argument("misheard position out of range");
    const std::size_t k = positions.size();
    if (k > 25) throw std::invalid_argument("too many misheard positions to enumerate");

    std::set<SoundString> variants;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        SoundString v = word;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::uint64_t{1} << i)) {
                int& s = v.sounds[static_cast<std::size_t>(positions[i])];
                s = phi.apply(s);
            }
        variants.insert(std::move(v));
    }
    return variants;
}

}  // namespace mishear
