#include "mishear/gamma_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mishear {

namespace {

// Unnormalized log density n^alpha exp(-beta n).
double log_shape(double alpha, double beta, int n) {
    return alpha * std::log(static_cast<double>(n)) - beta * n;
}

double discrete_log_norm(double alpha, double beta, int n_max) {
    // log of sum_{n=1..n_max} n^alpha exp(-beta n), max-shifted.
    double peak = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) peak = std::max(peak, log_shape(alpha, beta, n));
    double acc = 0.0;
    for (int n = 1; n <= n_max; ++n) acc += std::exp(log_shape(alpha, beta, n) - peak);
    return peak + std::log(acc);
}

}  // namespace

void GammaWordLengthModel::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("beta must be positive");
    if (n_max_eval < 1) throw std::invalid_argument("n_max_eval must be >= 1");
}

double GammaWordLengthModel::log_norm() const {
    if (normalization == Normalization::continuous)
        return (alpha + 1.0) * std::log(beta) - std::lgamma(alpha + 1.0);
    return -discrete_log_norm(alpha, beta, n_max_eval);
}

double GammaWordLengthModel::log_pmf(int n) const {
    validate();
    if (n < 1) throw std::invalid_argument("length must be >= 1");
    return log_norm() + log_shape(alpha, beta, n);
}

double GammaWordLengthModel::pmf(int n) const { return std::exp(log_pmf(n)); }

double GammaWordLengthModel::tail_sum(int m) const {
    validate();
    if (m < 1 || m > n_max_eval)
        throw std::invalid_argument("tail_sum start outside [1, n_max_eval]");
    const double ln_c = log_norm();
    double sum = 0.0;
    for (int n = n_max_eval; n >= m; --n)  // ascending magnitudes mostly; cheap either way
        sum += std::exp(ln_c + log_shape(alpha, beta, n));
    return sum;
}

std::vector<double> GammaWordLengthModel::pmf_series() const {
    validate();
    const double ln_c = log_norm();
    std::vector<double> p(static_cast<std::size_t>(n_max_eval));
    for (int n = 1; n <= n_max_eval; ++n)
        p[static_cast<std::size_t>(n - 1)] = std::exp(ln_c + log_shape(alpha, beta, n));
    return p;
}

int GammaWordLengthModel::mode_length() const {
    validate();
    return static_cast<int>(std::floor(alpha / beta + 0.5));
}

namespace {

struct Residuals {
    double cost = 0.0;        // 0.5 * sum r^2
    double g_alpha = 0.0;     // gradient of cost
    double g_beta = 0.0;
    double h_aa = 0.0, h_ab = 0.0, h_bb = 0.0;  // J^T J (Gauss-Newton)
};

// Residuals r_n = p_hat_n - pmf(n) with the discrete-normalized model.
// d pmf / d alpha = pmf(n) (ln n - E[ln j]),  d pmf / d beta = pmf(n) (E[j] - n),
// with expectations over the model pmf.
Residuals evaluate(const std::vector<std::pair<int, double>>& data, double alpha,
                   double beta, int n_max) {
    GammaWordLengthModel m{alpha, beta, n_max, Normalization::discrete};
    const std::vector<double> p = m.pmf_series();
    double mean_n = 0.0, mean_ln = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        mean_n += n * p[static_cast<std::size_t>(n - 1)];
        mean_ln += std::log(static_cast<double>(n)) * p[static_cast<std::size_t>(n - 1)];
    }
    Residuals out;
    for (const auto& [n, phat] : data) {
        const double pn = p[static_cast<std::size_t>(n - 1)];
        const double r = phat - pn;
        const double ja = -pn * (std::log(static_cast<double>(n)) - mean_ln);
        const double jb = -pn * (mean_n - n);
        out.cost += 0.5 * r * r;
        out.g_alpha += r * ja;
        out.g_beta += r * jb;
        out.h_aa += ja * ja;
        out.h_ab += ja * jb;
        out.h_bb += jb * jb;
    }
    return out;
}

constexpr double kAlphaMax = 20.0, kBetaMax = 5.0, kParamMin = 1e-6;

}  // namespace

GammaFit fit_gamma(const EmpiricalDistribution& dist) {
    std::vector<std::pair<int, double>> data;
    int n_peak = 1;
    double p_peak = -1.0;
    int n_obs_max = 1;
    for (const auto& [n, p] : dist.probs) {
        if (p < 0.0) throw std::invalid_argument("negative probability in distribution");
        if (p == 0.0) continue;
        data.emplace_back(n, p);
        n_obs_max = std::max(n_obs_max, n);
        if (p > p_peak) {
            p_peak = p;
            n_peak = n;
        }
    }
    if (data.size() < 3)
        throw std::invalid_argument("fit requires support on at least 3 distinct lengths");

    const int n_max = std::max(100, n_obs_max);
    double alpha = 4.0;
    double beta = std::clamp(4.0 / n_peak, kParamMin, kBetaMax);

    Residuals cur = evaluate(data, alpha, beta, n_max);
    double damping = 1e-3;
    constexpr int kMaxIterations = 500;
    int iter = 0;
    bool converged = false;
    for (; iter < kMaxIterations; ++iter) {
        const double gnorm = std::max(std::fabs(cur.g_alpha), std::fabs(cur.g_beta));
        if (gnorm < 1e-8) {
            converged = true;
            break;
        }
        // Solve (J^T J + damping I) step = -grad, 2x2.
        bool stepped = false;
        double step_norm = 0.0;
        for (int tries = 0; tries < 60; ++tries) {
            const double a11 = cur.h_aa + damping, a22 = cur.h_bb + damping, a12 = cur.h_ab;
            const double det = a11 * a22 - a12 * a12;
            if (det <= 0.0) {
                damping *= 10.0;
                continue;
            }
            const double da = (-cur.g_alpha * a22 + cur.g_beta * a12) / det;
            const double db = (-cur.g_beta * a11 + cur.g_alpha * a12) / det;
            const double na = std::clamp(alpha + da, kParamMin, kAlphaMax);
            const double nb = std::clamp(beta + db, kParamMin, kBetaMax);
            const Residuals next = evaluate(data, na, nb, n_max);
            step_norm = std::hypot(na - alpha, nb - beta);
            if (next.cost < cur.cost) {
                alpha = na;
                beta = nb;
                cur = next;
                damping = std::max(damping / 3.0, 1e-12);
                stepped = true;
                break;
            }
            damping *= 10.0;
        }
        if (!stepped || step_norm < 1e-10) {
            converged = true;  // no productive step left at this scale
            break;
        }
    }

    GammaFit fit;
    fit.model = GammaWordLengthModel{alpha, beta, n_max, Normalization::discrete};
    fit.residual_norm = std::sqrt(2.0 * cur.cost);
    fit.gradient_norm = std::max(std::fabs(cur.g_alpha), std::fabs(cur.g_beta));
    fit.iterations = iter;
    if (!converged && fit.gradient_norm >= 1e-8)
        throw FitError("gamma fit did not converge after " +
                           std::to_string(kMaxIterations) + " iterations",
                       fit);
    return fit;
}

}  // namespace mishear
