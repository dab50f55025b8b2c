#pragma once
// Cluster-weighted partition functions on binary chains.
//
// Sites of a length-n chain are independently occupied with probability q;
// every maximal run of k occupied sites carries a statistical weight
// lambda_k. Z_n is the weighted sum over all 2^n configurations, computed by
// a two-sided recursion in log space. Weight families with at most
// exponential growth admit an extensive free energy K = -ln z*, where z* is
// the smallest zero of the generating-series denominator; factorial weights
// are superexponential and give a free-energy density K_n that grows
// logarithmically with n. On top of this sits the dynamical exponent
// Delta_n = n K_n / ln(Lambda p_n) and its crossover length.

#include <iosfwd>
#include <map>
#include <vector>

#include "mishear/profile.hpp"

namespace mishear {

class ClusterWeightScheme {
  public:
    enum class Kind { exponential, linear, quadratic, factorial, custom };

    static ClusterWeightScheme exponential(double mu);  // lambda_k = mu^k
    static ClusterWeightScheme linear(double a);        // lambda_k = a k
    static ClusterWeightScheme quadratic(double b);     // lambda_k = b k^2
    static ClusterWeightScheme factorial(double mu);    // lambda_k = mu^k k!
    static ClusterWeightScheme custom(std::vector<double> weights);  // lambda_1..lambda_K

    double weight(int k) const;      // lambda_k; throws beyond a custom table
    double log_weight(int k) const;  // ln lambda_k, safe for large k

    Kind kind() const { return kind_; }
    double parameter() const { return parameter_; }

  private:
    ClusterWeightScheme(Kind kind, double parameter, std::vector<double> table);

    Kind kind_;
    double parameter_;
    std::vector<double> table_;  // custom only
};

struct PartitionResult {
    // Indexed by length - 1, for lengths 1..n.
    std::vector<double> log_z_empty_start;     // ln Z_n with leftmost site empty
    std::vector<double> log_z_occupied_start;  // ln Z_n with leftmost site occupied
    std::vector<double> log_z;                 // ln Z_n
    std::vector<double> free_energy_density;   // K_n = ln Z_n / n
};

// Two-sided recursion
//   Z_n(empty)    = p^n + sum_m p^m Z_{n-m}(occupied)
//   Z_n(occupied) = lambda_n q^n + sum_m lambda_m q^m Z_{n-m}(empty)
// evaluated in log space with running log-sum-exp; O(n^2). q = 0 and q = 1
// short-circuit to the single surviving configuration.
PartitionResult partition_function(int n, double q, const ClusterWeightScheme& scheme);

// Direct enumeration of all 2^n configurations; the reference oracle.
// Throws std::invalid_argument for n > 20.
double brute_force_partition(int n, double q, const ClusterWeightScheme& scheme);

// Extensive free energy K = -ln z* for the exponential / linear / quadratic
// families: exponential in closed form ln(p + mu q); linear and quadratic by
// bracketed bisection on (0, 1/q) of the polynomial forms
//   (1 - p z)(1 - q z)^2 = a p q z^2        (cubic)
//   (1 - p z)(1 - q z)^3 = b p q z^2 (1+qz) (quartic)
double extensive_free_energy(double q, const ClusterWeightScheme& scheme);

// K_n = ln Z_n / n from the recursion.
double free_energy_density(int n, double q, const ClusterWeightScheme& scheme);

// Delta_n = n K_n / ln(Lambda p_n) with factorial weights of parameter mu.
// Throws std::domain_error outside the lexicon support; negative values
// (where K_n < 0) are valid output.
double dynamical_exponent(const LanguageProfile& profile, double q, double mu, int n);

// Smallest n with Delta_n >= 1, scanning the support upward, capped at the
// static crossover length; if no crossing occurs up to n_st the two
// transitions merge and n_st itself is returned.
int dynamical_crossover(const LanguageProfile& profile, double q, double mu);

// Largest mu for which the dynamical crossover still equals n_st, located by
// bisection on ln(mu) to 1e-6 relative accuracy. Throws std::runtime_error if
// the crossover never detaches from n_st on the search interval.
double critical_mu(const LanguageProfile& profile, double q);

struct DynamicAnalysis {
    std::map<int, double> delta_series;  // n -> Delta_n over the support
    int n_dyn = 0;
    double mu_c = 0.0;
};

DynamicAnalysis analyze_dynamic(const LanguageProfile& profile, double q, double mu);

// CSV with header "n,K_n".
void write_free_energy_csv(std::ostream& out, const PartitionResult& result);

}  // namespace mishear
