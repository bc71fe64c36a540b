#pragma once

// Presence-only maximum-entropy likelihood analysis. Each game g carries a
// base log-probability and a simulated funness value; the model scores it
// f(g; theta) = logp_base + theta * u_sim and normalizes over a sampled
// background set. theta is fit by an L1-penalized grid sweep and compared
// against the theta = 0 baseline with a likelihood-ratio statistic.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gridplay/game.hpp"  // Error

namespace gridplay {

struct ScoredGame {
    std::string id;
    double logp_base = 0.0;  // average token log probability of the program
    double u_sim = 0.0;      // simulated funness in (0, 1)
    bool is_presence = false;
};

inline std::vector<double> make_theta_grid(double lo, double hi, double step) {
    if (step <= 0.0) throw Error("theta grid: step must be positive");
    if (hi < lo) throw Error("theta grid: upper bound below lower bound");
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 0.5));
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) grid.push_back(lo + i * step);
    return grid;
}

struct FitConfig {
    std::vector<double> theta_grid = make_theta_grid(0.0, 20.0, 0.1);
    double lambda = 0.1;
};

struct MaxEntFit {
    double theta_hat = 0.0;
    double loglik_at_theta_hat = 0.0;  // unpenalized
    double loglik_at_zero = 0.0;       // unpenalized
    std::vector<std::pair<double, double>> curve;  // (theta, penalized loglik)
    std::size_t n_presence = 0;
    std::size_t n_background = 0;
};

inline double game_score(const ScoredGame& g, double theta) {
    return g.logp_base + theta * g.u_sim;
}

// log sum_g' exp(f(g'; theta)) over the background set, max-subtracted.
inline double log_partition(const std::vector<ScoredGame>& background, double theta) {
    if (background.empty()) throw Error("log_partition: background set is empty");
    double fmax = game_score(background.front(), theta);
    for (const ScoredGame& g : background) fmax = std::max(fmax, game_score(g, theta));
    double sum = 0.0;
    for (const ScoredGame& g : background) sum += std::exp(game_score(g, theta) - fmax);
    return fmax + std::log(sum);
}

// sum_i f(g_i; theta) - N log Z(theta) - lambda |theta|
inline double dataset_log_likelihood(const std::vector<ScoredGame>& presence,
                                     const std::vector<ScoredGame>& background, double theta,
                                     double lambda) {
    if (presence.empty()) throw Error("dataset_log_likelihood: presence set is empty");
    double total = 0.0;
    for (const ScoredGame& g : presence) total += game_score(g, theta);
    return total - static_cast<double>(presence.size()) * log_partition(background, theta) -
           lambda * std::abs(theta);
}

// Evaluates the penalized objective at every grid point; theta_hat is the
// penalized argmax (ties resolve to the smallest theta). The stored logliks
// are unpenalized, for the likelihood-ratio comparison.
inline MaxEntFit fit_sweep(const std::vector<ScoredGame>& presence,
                           const std::vector<ScoredGame>& background,
                           const FitConfig& config) {
    if (config.theta_grid.empty()) throw Error("fit_sweep: theta grid is empty");
    if (config.lambda < 0.0) throw Error("fit_sweep: lambda must be >= 0");
    bool has_zero = false;
    for (std::size_t i = 0; i < config.theta_grid.size(); ++i) {
        if (config.theta_grid[i] == 0.0) has_zero = true;
        if (i > 0 && config.theta_grid[i] <= config.theta_grid[i - 1])
            throw Error("fit_sweep: theta grid must be strictly ascending");
    }
    if (!has_zero) throw Error("fit_sweep: theta grid must contain 0");

    MaxEntFit fit;
    fit.n_presence = presence.size();
    fit.n_background = background.size();
    fit.curve.reserve(config.theta_grid.size());
    double best = 0.0;
    bool first = true;
    for (double theta : config.theta_grid) {
        const double penalized =
            dataset_log_likelihood(presence, background, theta, config.lambda);
        fit.curve.emplace_back(theta, penalized);
        if (first || penalized > best) {
            best = penalized;
            fit.theta_hat = theta;
            first = false;
        }
    }
    fit.loglik_at_theta_hat = dataset_log_likelihood(presence, background, fit.theta_hat, 0.0);
    fit.loglik_at_zero = dataset_log_likelihood(presence, background, 0.0, 0.0);
    return fit;
}

// 2 * (loglik at theta_hat - loglik at 0), both unpenalized; 1 degree of
// freedom for the single swept parameter.
inline std::pair<double, int> likelihood_ratio_test(const MaxEntFit& fit) {
    return {2.0 * (fit.loglik_at_theta_hat - fit.loglik_at_zero), 1};
}

}  // namespace gridplay
