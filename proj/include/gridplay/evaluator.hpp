#pragma once

// Monte Carlo playout harness and the funness readouts computed from it:
// outcome distribution, balance (one minus EMD to the ideal half/half
// no-draw outcome), challenge (heuristic agent score rate against a random
// opponent), game length, expected payoff, outcome entropy, and the combined
// logistic funness score.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gridplay/agents.hpp"

namespace gridplay {

struct OutcomeDist {
    double p1 = 0.0;
    double draw = 0.0;
    double p2 = 0.0;
    bool operator==(const OutcomeDist&) const = default;
};

struct PlayoutStats {
    OutcomeDist dist;
    double mean_length = 0.0;
    int n = 0;
    std::uint64_t seed = 0;
    bool operator==(const PlayoutStats&) const = default;
};

struct FunnessConfig {
    int n_selfplay = 200;
    double selfplay_temperature = 1.0;
    int n_vs_random = 100;
    double vs_random_temperature = 0.2;
    // logistic combiner coefficients (implementation constants calibrated
    // against the shipped reference corpus, see README)
    double c0 = -3.6;
    double c_balance = 1.0;
    double c_challenge = 2.5;
    double c_length = 2.5;
    double length_target_fraction = 0.35;
    double length_width_fraction = 0.3;
    AgentWeights weights{};
    int max_cells = 144;  // evaluation guard: refuse larger boards
};

struct FunnessScore {
    double balance = 0.0;       // 1 - EMD(dist, (1/2, 0, 1/2))
    double challenge = 0.0;     // agent score rate vs the random baseline
    double length_score = 0.0;  // unimodal preference for mid-length games
    double mean_length = 0.0;
    double u_sim = 0.0;         // logistic(c0 + c_b*balance + c_c*challenge + c_l*length)
};

namespace detail {

inline void check_board_cap(const GameSpec& spec, const FunnessConfig& config) {
    if (spec.board.cell_count() > config.max_cells)
        throw Error("evaluation refused: board " + std::to_string(spec.board.rows) + "x" +
                    std::to_string(spec.board.cols) + " exceeds the cap of " +
                    std::to_string(config.max_cells) + " cells");
}

// Plays one game to its terminal on a reusable workspace. Bit-identical to
// composing the public choose_move/apply_move operations.
inline std::pair<Outcome, int> run_playout_ws(Workspace& ws, const Policy& policy1,
                                              const Policy& policy2, RngStream& rng) {
    ws.reset();
    thread_local std::vector<double> values;
    while (!ws.terminal()) {
        const Policy& policy = ws.mover() == 1 ? policy1 : policy2;
        const auto& legal = ws.legal_cells();
        int cell;
        if (std::holds_alternative<UniformRandom>(policy)) {
            cell = legal[rng.below(legal.size())];
        } else {
            const HeuristicAgent& agent = std::get<HeuristicAgent>(policy);
            const AgentWeights& w = agent.weights;
            ws.move_values(w.w_win, w.w_lose, w.w_self, w.w_block, values);
            cell = legal[softmax_pick(values, agent.temperature, rng)];
        }
        ws.apply(cell);
    }
    return {*ws.terminal(), ws.ply()};
}

}  // namespace detail

// Plays spec from the empty board to a terminal outcome; policy1 controls
// player 1's placements and policy2 player 2's, per the schedule. Returns
// the outcome and the total number of placements.
inline std::pair<Outcome, int> run_playout(const GameSpec& spec, const Policy& policy1,
                                           const Policy& policy2, RngStream& rng) {
    detail::Workspace ws(std::make_shared<const GameSpec>(spec));
    return detail::run_playout_ws(ws, policy1, policy2, rng);
}

// n_selfplay playouts of the heuristic agent against itself; playout i draws
// from stream id i of `seed`.
inline PlayoutStats self_play_stats(const GameSpec& spec, const FunnessConfig& config,
                                    std::uint64_t seed) {
    detail::check_board_cap(spec, config);
    detail::Workspace ws(std::make_shared<const GameSpec>(spec));
    const Policy agent = HeuristicAgent{config.weights, config.selfplay_temperature};
    int wins1 = 0, draws = 0, wins2 = 0;
    long long total_length = 0;
    for (int i = 0; i < config.n_selfplay; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const auto [outcome, length] = detail::run_playout_ws(ws, agent, agent, rng);
        switch (outcome) {
            case Outcome::P1Win: ++wins1; break;
            case Outcome::Draw: ++draws; break;
            case Outcome::P2Win: ++wins2; break;
        }
        total_length += length;
    }
    PlayoutStats stats;
    const double n = static_cast<double>(config.n_selfplay);
    stats.dist = OutcomeDist{wins1 / n, draws / n, wins2 / n};
    stats.mean_length = static_cast<double>(total_length) / n;
    stats.n = config.n_selfplay;
    stats.seed = seed;
    return stats;
}

// Stream ids used by the vs-random challenge playouts; kept disjoint from
// the self-play ids 0..n-1 drawn from the same seed.
inline constexpr std::uint64_t kChallengeStreamBase = 1ULL << 32;

// n_vs_random playouts of the heuristic agent against the uniform random
// baseline, the agent's seat alternating between P1 and P2. Returns the
// agent's score rate (wins + draws/2) / n.
inline double challenge_score(const GameSpec& spec, const FunnessConfig& config,
                              std::uint64_t seed) {
    detail::check_board_cap(spec, config);
    detail::Workspace ws(std::make_shared<const GameSpec>(spec));
    const Policy agent = HeuristicAgent{config.weights, config.vs_random_temperature};
    const Policy random = UniformRandom{};
    int wins = 0, draws = 0;
    for (int i = 0; i < config.n_vs_random; ++i) {
        RngStream rng(seed, kChallengeStreamBase + static_cast<std::uint64_t>(i));
        const int agent_seat = i % 2 == 0 ? 1 : 2;
        const auto [outcome, length] = agent_seat == 1
                                           ? detail::run_playout_ws(ws, agent, random, rng)
                                           : detail::run_playout_ws(ws, random, agent, rng);
        (void)length;
        if (outcome == win_for(agent_seat)) ++wins;
        else if (outcome == Outcome::Draw) ++draws;
    }
    return (wins + 0.5 * draws) / static_cast<double>(config.n_vs_random);
}

// Earth Mover's Distance between dist and the ideal (1/2, 0, 1/2) on the
// ordered support (P1 win, draw, P2 win) with unit neighbor distance,
// normalized by the maximum attainable value (1, reached at a certain win
// for either player or a certain draw). Cumulative-difference form.
inline double balance_emd(const OutcomeDist& dist) {
    const double cdf1 = dist.p1;
    const double cdf2 = dist.p1 + dist.draw;
    return std::abs(cdf1 - 0.5) + std::abs(cdf2 - 0.5);
}

inline double expected_payoff(const OutcomeDist& dist) { return dist.p1 - dist.p2; }

// Shannon entropy of the outcome distribution, in nats.
inline double outcome_entropy(const OutcomeDist& dist) {
    double h = 0.0;
    for (double p : {dist.p1, dist.draw, dist.p2})
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

// Gaussian-bump preference for games that are neither too short nor too
// long, peaking at length_target_fraction of the board size.
inline double length_score(double mean_length, const GameSpec& spec,
                           const FunnessConfig& config) {
    const double cells = static_cast<double>(spec.board.cell_count());
    const double target = config.length_target_fraction * cells;
    const double width = config.length_width_fraction * cells;
    const double z = (mean_length - target) / width;
    return std::exp(-z * z);
}

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Midpoint percentile rank of u within the reference scores, in [0, 100].
inline double percentile(double u, const std::vector<double>& reference) {
    if (reference.empty()) throw Error("percentile: reference set is empty");
    double below = 0.0;
    for (double r : reference) {
        if (r < u) below += 1.0;
        else if (r == u) below += 0.5;
    }
    return 100.0 * below / static_cast<double>(reference.size());
}

// Everything the evaluation report needs for one game.
struct EvalResult {
    PlayoutStats selfplay;
    FunnessScore score;
    double payoff = 0.0;
    double entropy = 0.0;
};

inline EvalResult evaluate_game(const GameSpec& spec, const FunnessConfig& config,
                                std::uint64_t seed) {
    EvalResult result;
    result.selfplay = self_play_stats(spec, config, seed);
    result.score.balance = 1.0 - balance_emd(result.selfplay.dist);
    result.score.challenge = challenge_score(spec, config, seed);
    result.score.mean_length = result.selfplay.mean_length;
    result.score.length_score = length_score(result.selfplay.mean_length, spec, config);
    result.score.u_sim = logistic(config.c0 + config.c_balance * result.score.balance +
                                  config.c_challenge * result.score.challenge +
                                  config.c_length * result.score.length_score);
    result.payoff = expected_payoff(result.selfplay.dist);
    result.entropy = outcome_entropy(result.selfplay.dist);
    return result;
}

inline FunnessScore funness(const GameSpec& spec, const FunnessConfig& config,
                            std::uint64_t seed) {
    return evaluate_game(spec, config, seed).score;
}

}  // namespace gridplay
