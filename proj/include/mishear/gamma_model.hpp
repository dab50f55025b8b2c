#pragma once
// Two-parameter Gamma word-length distribution p_n ~ n^alpha exp(-beta n),
// its normalization modes, derived characteristic lengths, and a nonlinear
// least-squares fitter.

#include <stdexcept>
#include <vector>

#include "mishear/corpus.hpp"

namespace mishear {

enum class Normalization {
    // C = beta^(alpha+1) / Gamma(alpha+1); treats n as continuous, so the
    // sum over n = 1..n_max_eval is close to but not exactly 1.
    continuous,
    // renormalized so the sum over n = 1..n_max_eval is exactly 1.
    discrete,
};

struct GammaWordLengthModel {
    double alpha = 1.0;  // rise exponent, > 0
    double beta = 1.0;   // decay rate per unit length, > 0
    int n_max_eval = 100;
    Normalization normalization = Normalization::continuous;

    // Throws std::invalid_argument if parameters are out of range.
    void validate() const;

    double log_pmf(int n) const;
    double pmf(int n) const;  // throws if n < 1

    // Sum of pmf(n) for n = m .. n_max_eval. Throws if m outside [1, n_max_eval].
    double tail_sum(int m) const;

    // pmf(n) for n = 1..n_max_eval, single evaluation of the normalization.
    std::vector<double> pmf_series() const;

    double mean_length() const { return (alpha + 1.0) / beta; }
    int mode_length() const;  // round(alpha/beta), ties round half up

  private:
    double log_norm() const;
};

struct GammaFit {
    GammaWordLengthModel model;  // discrete normalization, as fitted
    double residual_norm = 0.0;  // sqrt(sum of squared residuals)
    double gradient_norm = 0.0;  // max-norm of the cost gradient at the solution
    int iterations = 0;
};

// Thrown when the optimizer fails to converge; carries the best iterate.
class FitError : public std::runtime_error {
  public:
    FitError(const std::string& message, GammaFit best)
        : std::runtime_error(message), best_(std::move(best)) {}
    const GammaFit& best() const { return best_; }

  private:
    GammaFit best_;
};

// Least-squares fit of (alpha, beta) to an empirical length distribution:
// minimizes sum_n (p_hat_n - pmf(n))^2 over the empirical support with the
// model in discrete normalization. Levenberg-Marquardt with analytic
// derivatives, started from alpha = 4, beta = 4 / argmax(p_hat), constrained
// to alpha in (0, 20], beta in (0, 5]. Requires support on at least three
// distinct lengths. Throws FitError on non-convergence.
GammaFit fit_gamma(const EmpiricalDistribution& dist);

}  // namespace mishear
