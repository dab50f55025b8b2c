// Command-line front end: corpus fitting, table replicas, figure data and
// Monte-Carlo validation runs. Every command writes its outputs plus a
// manifest.json into --out-dir; deterministic commands reproduce their
// outputs byte for byte, stochastic ones do so for a fixed --seed.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mishear/anticipation.hpp"
#include "mishear/cluster.hpp"
#include "mishear/corpus.hpp"
#include "mishear/gamma_model.hpp"
#include "mishear/mishearing.hpp"
#include "mishear/montecarlo.hpp"
#include "mishear/profile.hpp"
#include "mishear/recognition.hpp"

namespace fs = std::filesystem;
using namespace mishear;

namespace {

// Shortest representation that round-trips the double exactly.
std::string fmt(double x) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
    return std::string(buffer, end);
}

std::string fmt(double x, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

std::string fmt_fixed(double x, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << x;
    return os.str();
}

struct Manifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
};

void write_manifest(const fs::path& out_dir, const Manifest& m) {
    nlohmann::json doc;
    doc["command"] = m.command;
    doc["parameters"] = m.parameters;
    doc["inputs"] = m.inputs;
    doc["outputs"] = m.outputs;
    if (m.seed) doc["seed"] = *m.seed;
    std::ofstream out(out_dir / "manifest.json");
    out << doc.dump(2) << '\n';
}

std::ofstream open_output(const fs::path& out_dir, const std::string& name,
                          Manifest& manifest) {
    fs::create_directories(out_dir);
    manifest.outputs.push_back(name);
    std::ofstream out(out_dir / name);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / name).string());
    return out;
}

std::vector<LanguageProfile> resolve_profiles(const std::string& path,
                                              Manifest& manifest) {
    if (path.empty()) return builtin_profiles();
    manifest.inputs.push_back(path);
    return load_profiles_file(path);
}

void apply_overrides(std::vector<LanguageProfile>& profiles, std::int64_t lexicon_size,
                     double epsilon, int nu) {
    for (LanguageProfile& p : profiles) {
        p.lexicon_size = lexicon_size;
        p.epsilon = epsilon;
        p.sounds = nu;
        p.validate();
    }
}

int run_fit(const std::string& corpus_path, const std::string& format,
            const std::string& normalization, const fs::path& out_dir) {
    Manifest manifest{"fit",
                      {{"corpus", corpus_path},
                       {"format", format},
                       {"normalization", normalization}},
                      {corpus_path},
                      {},
                      std::nullopt};
    std::ifstream in(corpus_path);
    if (!in) {
        std::cerr << "fit error: cannot open corpus " << corpus_path << '\n';
        return 1;
    }
    const CorpusFormat fmt_mode =
        format == "tsv" ? CorpusFormat::word_count_tsv : CorpusFormat::plain;
    LengthHistogram hist;
    GammaFit fit;
    try {
        hist = parse_corpus(in, fmt_mode);
        fit = fit_gamma(histogram_to_distribution(hist));
    } catch (const std::exception& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return 1;
    }

    GammaWordLengthModel reported = fit.model;
    reported.normalization = normalization == "discrete" ? Normalization::discrete
                                                         : Normalization::continuous;

    auto report = open_output(out_dir, "fit_report.json", manifest);
    nlohmann::json doc;
    doc["alpha"] = fit.model.alpha;
    doc["beta"] = fit.model.beta;
    doc["residual_norm"] = fit.residual_norm;
    doc["gradient_norm"] = fit.gradient_norm;
    doc["iterations"] = fit.iterations;
    doc["normalization"] = normalization;
    doc["mean_length"] = reported.mean_length();
    doc["mode_length"] = reported.mode_length();
    report << doc.dump(2) << '\n';

    auto csv = open_output(out_dir, "fit.csv", manifest);
    csv << "length,empirical,fitted\n";
    const EmpiricalDistribution dist = histogram_to_distribution(hist);
    for (const auto& [n, p] : dist.probs)
        csv << n << ',' << fmt(p) << ',' << fmt(reported.pmf(n)) << '\n';

    auto hist_csv = open_output(out_dir, "histogram.csv", manifest);
    write_histogram_csv(hist_csv, hist);

    write_manifest(out_dir, manifest);
    std::cout << "alpha " << fmt(fit.model.alpha, 6) << "  beta "
              << fmt(fit.model.beta, 6) << "  residual " << fmt(fit.residual_norm, 6)
              << "  (" << fit.iterations << " iterations)\n";
    return 0;
}

int run_tables(const std::string& profiles_path, double q, std::int64_t lexicon_size,
               double epsilon, int nu, const fs::path& out_dir) {
    Manifest manifest{"tables",
                      {{"q", fmt(q)},
                       {"lexicon_size", std::to_string(lexicon_size)},
                       {"epsilon", fmt(epsilon)},
                       {"nu", std::to_string(nu)},
                       {"profiles", profiles_path.empty() ? "builtin" : profiles_path}},
                      {},
                      {},
                      std::nullopt};
    std::vector<LanguageProfile> profiles;
    try {
        profiles = resolve_profiles(profiles_path, manifest);
        apply_overrides(profiles, lexicon_size, epsilon, nu);
    } catch (const std::exception& e) {
        std::cerr << "tables error: " << e.what() << '\n';
        return 1;
    }

    auto t1 = open_output(out_dir, "table1.csv", manifest);
    auto t2 = open_output(out_dir, "table2.csv", manifest);
    auto t3 = open_output(out_dir, "table3.csv", manifest);
    t1 << "language,alpha,beta,mean_length,mode_length,mean_length_display\n";
    t2 << "language,delta_star,n_st,m_ant,delta_star_display\n";
    t3 << "language,q_th,m_th,delta_th,q_th_display,delta_th_display\n";

    std::cout << std::left << std::setw(11) << "language" << std::right
              << std::setw(7) << "alpha" << std::setw(7) << "beta" << std::setw(8)
              << "mean" << std::setw(6) << "mode" << std::setw(9) << "delta*"
              << std::setw(6) << "n_st" << std::setw(7) << "m_ant" << std::setw(8)
              << "q_th" << std::setw(6) << "m_th" << std::setw(10) << "delta_th"
              << '\n';
    for (const LanguageProfile& p : profiles) {
        t1 << p.name << ',' << fmt(p.model.alpha) << ',' << fmt(p.model.beta) << ','
           << fmt(p.model.mean_length()) << ',' << p.model.mode_length() << ','
           << fmt_fixed(p.model.mean_length(), 1) << '\n';
        try {
            const double ds = delta_star(p, q);
            const int n_st = static_crossover(p, q);
            const int m_ant = anticipation_length(p);
            const MishearingThreshold th = mishearing_threshold(p);
            t2 << p.name << ',' << fmt(ds) << ',' << n_st << ',' << m_ant << ','
               << fmt_fixed(ds, 2) << '\n';
            t3 << p.name << ',' << fmt(th.q_th) << ',' << th.m_th << ','
               << fmt(th.delta_th) << ',' << fmt_fixed(th.q_th, 2) << ','
               << fmt_fixed(th.delta_th, 2) << '\n';
            std::cout << std::left << std::setw(11) << p.name << std::right
                      << std::setw(7) << fmt(p.model.alpha, 3) << std::setw(7)
                      << fmt(p.model.beta, 3) << std::setw(8)
                      << fmt_fixed(p.model.mean_length(), 1) << std::setw(6)
                      << p.model.mode_length() << std::setw(9) << fmt_fixed(ds, 2)
                      << std::setw(6) << n_st << std::setw(7) << m_ant << std::setw(8)
                      << fmt_fixed(th.q_th, 2) << std::setw(6) << th.m_th
                      << std::setw(10) << fmt_fixed(th.delta_th, 2) << '\n';
        } catch (const std::exception& e) {
            t2 << p.name << ",error: " << e.what() << ",,\n";
            t3 << p.name << ",error: " << e.what() << ",,,\n";
            std::cerr << p.name << ": " << e.what() << '\n';
        }
    }
    write_manifest(out_dir, manifest);
    return 0;
}

const LanguageProfile& find_profile(const std::vector<LanguageProfile>& profiles,
                                    const std::string& name) {
    for (const LanguageProfile& p : profiles)
        if (p.name == name) return p;
    throw std::runtime_error("no profile named '" + name + "'");
}

int run_figures(const std::string& figure, const std::string& profiles_path,
                const std::string& language, double q, std::int64_t lexicon_size,
                double epsilon, int nu, std::vector<double> q_values,
                std::vector<double> mu_values, int m_max, int n_max, double mu_min,
                double mu_max, int mu_points, const fs::path& out_dir) {
    Manifest manifest{"figures",
                      {{"figure", figure},
                       {"language", language},
                       {"q", fmt(q)},
                       {"lexicon_size", std::to_string(lexicon_size)},
                       {"epsilon", fmt(epsilon)},
                       {"nu", std::to_string(nu)},
                       {"profiles", profiles_path.empty() ? "builtin" : profiles_path}},
                      {},
                      {},
                      std::nullopt};
    std::vector<LanguageProfile> profiles;
    try {
        profiles = resolve_profiles(profiles_path, manifest);
        apply_overrides(profiles, lexicon_size, epsilon, nu);

        if (figure == "wld") {
            auto csv = open_output(out_dir, "wld.csv", manifest);
            csv << "language,n,p_n\n";
            for (const LanguageProfile& p : profiles) {
                const auto series = p.model.pmf_series();
                for (int n = 1; n <= std::min(n_max, p.model.n_max_eval); ++n)
                    csv << p.name << ',' << n << ','
                        << fmt(series[static_cast<std::size_t>(n - 1)]) << '\n';
            }
        } else if (figure == "hammock") {
            const LanguageProfile& p =
                find_profile(profiles, language.empty() ? "English" : language);
            auto csv = open_output(out_dir, "hammock.csv", manifest);
            csv << "m,k,ln_g\n";
            for (const HammockRow& row : hammock_rows(p, m_max))
                csv << row.m << ',' << row.k << ',' << fmt(row.ln_g) << '\n';
        } else if (figure == "gbar") {
            const LanguageProfile& p =
                find_profile(profiles, language.empty() ? "English" : language);
            if (q_values.empty()) {
                const double q_th = mishearing_threshold(p).q_th;
                q_values = {0.05, 0.10, 0.15, q_th, 0.25, 0.35};
            }
            auto csv = open_output(out_dir, "gbar.csv", manifest);
            csv << "q,m,ln_gbar\n";
            for (const double qv : q_values)
                for (int m = 1; m <= m_max; ++m)
                    csv << fmt(qv) << ',' << m << ','
                        << fmt(std::log(mean_misheard_cohort(p, qv, m))) << '\n';
        } else if (figure == "statdyn") {
            std::vector<std::string> names;
            if (language.empty() || language == "all")
                names = {"Finnish", "Burmese"};
            else
                names = {language};
            for (const std::string& name : names) {
                const LanguageProfile& p = find_profile(profiles, name);
                auto csv = open_output(out_dir, "statdyn_" + name + ".csv", manifest);
                csv << "mu,n_dyn\n";
                for (int i = 0; i < mu_points; ++i) {
                    const double mu =
                        mu_min * std::pow(mu_max / mu_min,
                                          static_cast<double>(i) / (mu_points - 1));
                    csv << fmt(mu) << ',' << dynamical_crossover(p, q, mu) << '\n';
                }
            }
        } else if (figure == "kn") {
            if (mu_values.empty()) mu_values = {0.5, 1.0, 2.0};
            for (const double mu : mu_values) {
                const PartitionResult part =
                    partition_function(n_max, q, ClusterWeightScheme::factorial(mu));
                std::ostringstream name;
                name << "kn_mu" << fmt(mu, 6) << ".csv";
                auto csv = open_output(out_dir, name.str(), manifest);
                write_free_energy_csv(csv, part);
            }
        } else {
            std::cerr << "usage error: unknown figure '" << figure
                      << "' (expected wld, hammock, gbar, statdyn or kn)\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "figures error: " << e.what() << '\n';
        return 1;
    }
    write_manifest(out_dir, manifest);
    return 0;
}

ClusterWeightScheme make_scheme(const std::string& scheme, double mu,
                                const std::vector<double>& weights) {
    if (scheme == "exponential") return ClusterWeightScheme::exponential(mu);
    if (scheme == "linear") return ClusterWeightScheme::linear(mu);
    if (scheme == "quadratic") return ClusterWeightScheme::quadratic(mu);
    if (scheme == "factorial") return ClusterWeightScheme::factorial(mu);
    if (scheme == "custom") return ClusterWeightScheme::custom(weights);
    throw std::runtime_error("unknown weight scheme '" + scheme + "'");
}

int run_simulate(const std::string& experiment, int n, double q, double s,
                 std::uint64_t seed, std::int64_t trials, const std::string& scheme,
                 double mu, const std::vector<double>& weights,
                 const std::string& profiles_path, const std::string& language,
                 std::int64_t lexicon_size, double epsilon, int nu,
                 const fs::path& out_dir) {
    Manifest manifest{"simulate",
                      {{"experiment", experiment},
                       {"n", std::to_string(n)},
                       {"q", fmt(q)},
                       {"s", fmt(s)},
                       {"trials", std::to_string(trials)},
                       {"scheme", scheme},
                       {"mu", fmt(mu)},
                       {"language", language}},
                      {},
                      {},
                      seed};
    const SimulationConfig config{seed, trials};
    bool pass = false;
    std::ostringstream rows;
    try {
        if (experiment == "variants") {
            const MonteCarloEstimate est = estimate_variant_moment(n, q, s, config);
            const double target = moment_variants(n, q, s);
            pass = est.within(target);
            rows << "variant_moment," << fmt(est.mean) << ',' << fmt(est.std_error)
                 << ',' << fmt(target) << ',' << (pass ? "pass" : "fail") << '\n';
        } else if (experiment == "partition") {
            const ClusterWeightScheme ws = make_scheme(scheme, mu, weights);
            const MonteCarloEstimate est = estimate_partition(n, q, ws, config);
            const double target = std::exp(
                partition_function(n, q, ws).log_z[static_cast<std::size_t>(n - 1)]);
            pass = est.within(target);
            rows << "partition," << fmt(est.mean) << ',' << fmt(est.std_error) << ','
                 << fmt(target) << ',' << (pass ? "pass" : "fail") << '\n';
        } else if (experiment == "mishearing") {
            const AlterationMap phi = AlterationMap::cyclic(nu);
            Rng rng(seed);
            SoundString word;
            word.sounds.assign(static_cast<std::size_t>(n), 0);
            double sum = 0.0, sum_sq = 0.0;
            for (std::int64_t t = 0; t < trials; ++t) {
                const SoundString heard = sample_mishearing(word, q, phi, rng);
                int changed = 0;
                for (std::size_t i = 0; i < heard.sounds.size(); ++i)
                    changed += heard.sounds[i] != word.sounds[i] ? 1 : 0;
                sum += changed;
                sum_sq += static_cast<double>(changed) * changed;
            }
            MonteCarloEstimate est;
            est.trials = trials;
            est.mean = sum / static_cast<double>(trials);
            est.std_error = std::sqrt(
                std::max(0.0, sum_sq / static_cast<double>(trials) - est.mean * est.mean) /
                static_cast<double>(trials));
            const double target = n * q;
            pass = est.within(target);
            rows << "mishearing_mean," << fmt(est.mean) << ',' << fmt(est.std_error)
                 << ',' << fmt(target) << ',' << (pass ? "pass" : "fail") << '\n';
        } else if (experiment == "cohort") {
            std::vector<LanguageProfile> profiles = resolve_profiles(profiles_path, manifest);
            apply_overrides(profiles, lexicon_size, epsilon, nu);
            LanguageProfile p = find_profile(profiles, language.empty() ? "English" : language);
            const SyntheticLexicon lexicon = generate_lexicon(p, config);
            const double eps_hat =
                measured_prefix_word_fraction(lexicon, p.model.mode_length());
            p.epsilon = eps_hat;
            const int m_analytic = anticipation_length(p);
            int m_empirical = -1;
            for (int m = 1; m <= lexicon.max_word_length(); ++m)
                if (empirical_cohort(lexicon, m) <= 1.0 + 1e-12) {
                    m_empirical = m;
                    break;
                }
            pass = m_empirical > 0 && std::abs(m_empirical - m_analytic) <= 1;
            rows << "cohort_uniqueness_point," << m_empirical << ",0," << m_analytic
                 << ',' << (pass ? "pass" : "fail") << '\n';
            rows << "measured_epsilon," << fmt(eps_hat) << ",0,,\n";
        } else {
            std::cerr << "usage error: unknown experiment '" << experiment
                      << "' (expected variants, partition, mishearing or cohort)\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "simulate error: " << e.what() << '\n';
        return 1;
    }

    auto csv = open_output(out_dir, "simulate_" + experiment + ".csv", manifest);
    csv << "quantity,estimate,std_error,target,status\n" << rows.str();
    write_manifest(out_dir, manifest);
    std::cout << (pass ? "pass" : "validation failure") << '\n';
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical model of spoken-word recognition under mishearings"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::string profiles_path;
    double q = 0.2;
    std::int64_t lexicon_size = 100000;
    double epsilon = 0.05;
    int nu = 20;

    auto* fit = app.add_subcommand("fit", "fit the word-length model to a corpus");
    fit->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    std::string corpus_path, corpus_format = "plain", normalization = "continuous";
    fit->add_option("corpus", corpus_path, "word list, one entry per line")->required();
    fit->add_option("--format", corpus_format, "plain | tsv")
        ->check(CLI::IsMember({"plain", "tsv"}));
    fit->add_option("--normalization", normalization, "continuous | discrete")
        ->check(CLI::IsMember({"continuous", "discrete"}));

    auto* tables = app.add_subcommand("tables", "print and export the reference tables");
    tables->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    tables->add_option("--profiles", profiles_path, "profiles JSON (default: builtin)");
    tables->add_option("--q", q, "mishearing probability")->capture_default_str();
    tables->add_option("--lexicon-size", lexicon_size, "lexicon size")
        ->capture_default_str();
    tables->add_option("--epsilon", epsilon, "prefix-word probability")
        ->capture_default_str();
    tables->add_option("--nu", nu, "sound inventory size")->capture_default_str();

    auto* figures = app.add_subcommand("figures", "export plot-ready CSV data");
    figures->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    std::string figure, language;  // per-figure default when empty
    std::vector<double> q_values, mu_values;
    int m_max = 15, fig_n_max = 500, mu_points = 20;
    double mu_min = 0.01, mu_max = 100.0;
    figures->add_option("figure", figure, "wld | hammock | gbar | statdyn | kn")
        ->required();
    figures->add_option("--profiles", profiles_path, "profiles JSON (default: builtin)");
    figures->add_option("--language", language, "profile name")->capture_default_str();
    figures->add_option("--q", q, "mishearing probability")->capture_default_str();
    figures->add_option("--lexicon-size", lexicon_size, "lexicon size")
        ->capture_default_str();
    figures->add_option("--epsilon", epsilon, "prefix-word probability")
        ->capture_default_str();
    figures->add_option("--nu", nu, "sound inventory size")->capture_default_str();
    figures->add_option("--q-values", q_values, "gbar: list of q values");
    figures->add_option("--mu", mu_values, "kn: list of mu values");
    figures->add_option("--m-max", m_max, "hammock/gbar: largest prefix length")
        ->capture_default_str();
    figures->add_option("--n-max", fig_n_max, "kn/wld: largest length")
        ->capture_default_str();
    figures->add_option("--mu-min", mu_min, "statdyn: grid start")->capture_default_str();
    figures->add_option("--mu-max", mu_max, "statdyn: grid end")->capture_default_str();
    figures->add_option("--mu-points", mu_points, "statdyn: grid size")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo validation runs");
    simulate->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    std::string experiment, scheme = "custom";
    int sim_n = 10;
    double sim_s = 1.0, mu = 1.0;
    std::uint64_t seed = 42;
    std::int64_t trials = 1000000;
    std::vector<double> weights{2.0, 3.0, 4.0};
    simulate->add_option("experiment", experiment,
                         "variants | partition | mishearing | cohort")->required();
    simulate->add_option("--n", sim_n, "word/chain length")->capture_default_str();
    simulate->add_option("--q", q, "mishearing/occupation probability")
        ->capture_default_str();
    simulate->add_option("--s", sim_s, "moment order")->capture_default_str();
    simulate->add_option("--seed", seed, "random seed")->capture_default_str();
    simulate->add_option("--trials", trials, "number of trials")->capture_default_str();
    simulate->add_option("--scheme", scheme,
                         "exponential | linear | quadratic | factorial | custom")
        ->check(CLI::IsMember({"exponential", "linear", "quadratic", "factorial",
                               "custom"}));
    simulate->add_option("--mu", mu, "scheme parameter")->capture_default_str();
    simulate->add_option("--weights", weights, "custom weight table")
        ->capture_default_str();
    simulate->add_option("--profiles", profiles_path, "profiles JSON (default: builtin)");
    simulate->add_option("--language", language, "profile name")->capture_default_str();
    simulate->add_option("--lexicon-size", lexicon_size, "lexicon size")
        ->capture_default_str();
    simulate->add_option("--epsilon", epsilon, "prefix-word probability")
        ->capture_default_str();
    simulate->add_option("--nu", nu, "sound inventory size")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed())
            return run_fit(corpus_path, corpus_format, normalization, out_dir);
        if (tables->parsed())
            return run_tables(profiles_path, q, lexicon_size, epsilon, nu, out_dir);
        if (figures->parsed())
            return run_figures(figure, profiles_path, language, q, lexicon_size,
                               epsilon, nu, q_values, mu_values, m_max, fig_n_max,
                               mu_min, mu_max, mu_points, out_dir);
        if (simulate->parsed())
            return run_simulate(experiment, sim_n, q, sim_s, seed, trials, scheme, mu,
                                weights, profiles_path, language, lexicon_size, epsilon,
                                nu, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
