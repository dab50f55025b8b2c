#include "mishear/cluster.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "mishear/recognition.hpp"

namespace mishear {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

ClusterWeightScheme::ClusterWeightScheme(Kind kind, double parameter,
                                         std::vector<double> table)
    : kind_(kind), parameter_(parameter), table_(std::move(table)) {}

ClusterWeightScheme ClusterWeightScheme::exponential(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    return {Kind::exponential, mu, {}};
}

ClusterWeightScheme ClusterWeightScheme::linear(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
    return {Kind::linear, a, {}};
}

ClusterWeightScheme ClusterWeightScheme::quadratic(double b) {
    if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
    return {Kind::quadratic, b, {}};
}

ClusterWeightScheme ClusterWeightScheme::factorial(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    return {Kind::factorial, mu, {}};
}

ClusterWeightScheme ClusterWeightScheme::custom(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("custom weight table is empty");
    for (const double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("cluster weights must be positive");
    return {Kind::custom, 0.0, std::move(weights)};
}

double ClusterWeightScheme::log_weight(int k) const {
    if (k < 1) throw std::invalid_argument("cluster size must be >= 1");
    switch (kind_) {
        case Kind::exponential: return k * std::log(parameter_);
        case Kind::linear: return std::log(parameter_) + std::log(static_cast<double>(k));
        case Kind::quadratic:
            return std::log(parameter_) + 2.0 * std::log(static_cast<double>(k));
        case Kind::factorial: return k * std::log(parameter_) + std::lgamma(k + 1.0);
        case Kind::custom:
            if (k > static_cast<int>(table_.size()))
                throw std::invalid_argument("cluster size beyond custom weight table");
            return std::log(table_[static_cast<std::size_t>(k - 1)]);
    }
    throw std::logic_error("unreachable");
}

double ClusterWeightScheme::weight(int k) const { return std::exp(log_weight(k)); }

PartitionResult partition_function(int n, double q, const ClusterWeightScheme& scheme) {
    if (n < 1) throw std::invalid_argument("chain length must be >= 1");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");

    PartitionResult out;
    const auto sz = static_cast<std::size_t>(n);
    out.log_z_empty_start.assign(sz, kNegInf);
    out.log_z_occupied_start.assign(sz, kNegInf);
    out.log_z.assign(sz, 0.0);
    out.free_energy_density.assign(sz, 0.0);

    if (q == 0.0 || q == 1.0) {
        // Single surviving configuration: all empty (weight 1) or all
        // occupied (weight lambda_n).
        for (int i = 1; i <= n; ++i) {
            const double lz = q == 0.0 ? 0.0 : scheme.log_weight(i);
            out.log_z[static_cast<std::size_t>(i - 1)] = lz;
            if (q == 0.0)
                out.log_z_empty_start[static_cast<std::size_t>(i - 1)] = 0.0;
            else
                out.log_z_occupied_start[static_cast<std::size_t>(i - 1)] = lz;
            out.free_energy_density[static_cast<std::size_t>(i - 1)] = lz / i;
        }
        return out;
    }

    const double lp = std::log1p(-q);
    const double lq = std::log(q);
    std::vector<double> log_lambda(sz + 1, 0.0);
    for (int k = 1; k <= n; ++k) log_lambda[static_cast<std::size_t>(k)] = scheme.log_weight(k);

    std::vector<double>& lzo = out.log_z_empty_start;
    std::vector<double>& lzb = out.log_z_occupied_start;
    for (int i = 1; i <= n; ++i) {
        // leftmost run of empty sites has size m = 1..i-1, or the whole chain
        double acc_o = i * lp;
        for (int m = 1; m < i; ++m)
            acc_o = log_add_exp(acc_o, m * lp + lzb[static_cast<std::size_t>(i - m - 1)]);
        // leftmost run of occupied sites likewise
        double acc_b = log_lambda[static_cast<std::size_t>(i)] + i * lq;
        for (int m = 1; m < i; ++m)
            acc_b = log_add_exp(acc_b, log_lambda[static_cast<std::size_t>(m)] + m * lq +
                                           lzo[static_cast<std::size_t>(i - m - 1)]);
        lzo[static_cast<std::size_t>(i - 1)] = acc_o;
        lzb[static_cast<std::size_t>(i - 1)] = acc_b;
        const double lz = log_add_exp(acc_o, acc_b);
        out.log_z[static_cast<std::size_t>(i - 1)] = lz;
        out.free_energy_density[static_cast<std::size_t>(i - 1)] = lz / i;
    }
    return out;
}

double brute_force_partition(int n, double q, const ClusterWeightScheme& scheme) {
    if (n < 1) throw std::invalid_argument("chain length must be >= 1");
    if (n > 20) throw std::invalid_argument("brute force limited to n <= 20");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    const double p = 1.0 - q;
    double total = 0.0;
    for (std::uint32_t config = 0; config < (std::uint32_t{1} << n); ++config) {
        double w = 1.0;
        int run = 0;
        for (int site = 0; site < n; ++site) {
            if (config & (std::uint32_t{1} << site)) {
                w *= q;
                ++run;
            } else {
                w *= p;
                if (run > 0) w *= scheme.weight(run);
                run = 0;
            }
        }
        if (run > 0) w *= scheme.weight(run);
        total += w;
    }
    return total;
}

namespace {

// Sign of the generating-series denominator in polynomial form; positive at
// z = 0+, negative just below 1/q, with a single sign change in between.
double denominator_poly(double z, double q, const ClusterWeightScheme& scheme) {
    const double p = 1.0 - q;
    const double a = scheme.parameter();
    switch (scheme.kind()) {
        case ClusterWeightScheme::Kind::linear: {
            const double u = 1.0 - q * z;
            return (1.0 - p * z) * u * u - a * p * q * z * z;
        }
        case ClusterWeightScheme::Kind::quadratic: {
            const double u = 1.0 - q * z;
            return (1.0 - p * z) * u * u * u - a * p * q * z * z * (1.0 + q * z);
        }
        default:
            throw std::logic_error("denominator_poly: unsupported scheme");
    }
}

}  // namespace

double extensive_free_energy(double q, const ClusterWeightScheme& scheme) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("q must be in (0, 1)");
    switch (scheme.kind()) {
        case ClusterWeightScheme::Kind::exponential:
            return std::log(1.0 - q + scheme.parameter() * q);
        case ClusterWeightScheme::Kind::linear:
        case ClusterWeightScheme::Kind::quadratic:
            break;
        default:
            throw std::invalid_argument(
                "extensive free energy defined for exponential/linear/quadratic weights");
    }
    double lo = 0.0;
    double hi = 1.0 / q * (1.0 - 1e-14);
    if (!(denominator_poly(lo, q, scheme) > 0.0) || !(denominator_poly(hi, q, scheme) < 0.0))
        throw std::runtime_error("no root of the generating-series denominator in (0, 1/q)");
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (denominator_poly(mid, q, scheme) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return -std::log(0.5 * (lo + hi));
}

double free_energy_density(int n, double q, const ClusterWeightScheme& scheme) {
    return partition_function(n, q, scheme)
        .free_energy_density[static_cast<std::size_t>(n - 1)];
}

namespace {

double log_word_count(const LanguageProfile& profile, int n) {
    GammaWordLengthModel m = profile.model;
    m.normalization = Normalization::continuous;
    return std::log(static_cast<double>(profile.lexicon_size)) + m.log_pmf(n);
}

}  // namespace

double dynamical_exponent(const LanguageProfile& profile, double q, double mu, int n) {
    profile.validate();
    if (n < 1) throw std::invalid_argument("length must be >= 1");
    const double ln_w = log_word_count(profile, n);
    if (ln_w <= 0.0) throw std::domain_error("beyond lexicon support");
    const PartitionResult part =
        partition_function(n, q, ClusterWeightScheme::factorial(mu));
    return part.log_z[static_cast<std::size_t>(n - 1)] / ln_w;
}

int dynamical_crossover(const LanguageProfile& profile, double q, double mu) {
    const int n_st = static_crossover(profile, q);
    const PartitionResult part =
        partition_function(n_st, q, ClusterWeightScheme::factorial(mu));
    bool in_support = false;
    for (int n = 1; n <= n_st; ++n) {
        const double ln_w = log_word_count(profile, n);
        if (ln_w <= 0.0) {
            if (in_support) break;
            continue;
        }
        in_support = true;
        if (part.log_z[static_cast<std::size_t>(n - 1)] / ln_w >= 1.0)
            return std::min(n, n_st);
    }
    return n_st;  // merged regime: dynamical and static transitions coincide
}

double critical_mu(const LanguageProfile& profile, double q) {
    const int n_st = static_crossover(profile, q);
    double lo = 1e-8;
    if (dynamical_crossover(profile, q, lo) != n_st)
        throw std::runtime_error("dynamical crossover detached over the whole interval");
    double hi = lo;
    while (dynamical_crossover(profile, q, hi) == n_st) {
        hi *= 10.0;
        if (hi > 1e8)
            throw std::runtime_error(
                "dynamical crossover never detaches from n_st on (1e-8, 1e8)");
    }
    lo = hi / 10.0;
    // bisection on ln(mu) to 1e-6 relative
    while (std::log(hi / lo) > 1e-6) {
        const double mid = std::sqrt(lo * hi);
        if (dynamical_crossover(profile, q, mid) == n_st)
            lo = mid;
        else
            hi = mid;
    }
    return lo;  // largest verified mu with n_dyn == n_st
}

DynamicAnalysis analyze_dynamic(const LanguageProfile& profile, double q, double mu) {
    DynamicAnalysis out;
    out.n_dyn = dynamical_crossover(profile, q, mu);
    out.mu_c = critical_mu(profile, q);
    const int n_st = static_crossover(profile, q);
    const PartitionResult part =
        partition_function(n_st, q, ClusterWeightScheme::factorial(mu));
    bool in_support = false;
    for (int n = 1; n <= n_st; ++n) {
        const double ln_w = log_word_count(profile, n);
        if (ln_w <= 0.0) {
            if (in_support) break;
            continue;
        }
        in_support = true;
        out.delta_series[n] = part.log_z[static_cast<std::size_t>(n - 1)] / ln_w;
    }
    return out;
}

void write_free_energy_csv(std::ostream& out, const PartitionResult& result) {
    out << "n,K_n\n";
    char buffer[32];
    for (std::size_t i = 0; i < result.free_energy_density.size(); ++i) {
        const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer),
                                             result.free_energy_density[i]);
        out << (i + 1) << ',' << std::string_view(buffer, end) << '\n';
    }
}

}  // namespace mishear
