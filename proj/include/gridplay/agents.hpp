#pragma once

// Move-selection policies: the goal-directed probabilistic heuristic agent
// and a uniform random baseline. All randomness flows through RngStream, so
// a (seed, stream) pair fully determines every trajectory.

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "gridplay/move_analysis.hpp"
#include "gridplay/rng.hpp"

namespace gridplay {

// Feature weights of the heuristic agent. The defaults are implementation
// choices exposed through the run configuration.
struct AgentWeights {
    double w_win = 10.0;    // bonus for immediately winning moves
    double w_lose = -10.0;  // penalty for immediately losing moves
    double w_self = 1.0;    // weight on own goal-progress change
    double w_block = 1.0;   // weight on reduction of opponent progress
    bool operator==(const AgentWeights&) const = default;
};

struct HeuristicAgent {
    AgentWeights weights{};
    double temperature = 1.0;
};

struct UniformRandom {};

using Policy = std::variant<HeuristicAgent, UniformRandom>;

namespace detail {

// Samples an index proportional to exp(value/temperature), max-subtracted
// for numerical stability. Consumes exactly one uniform draw.
inline std::size_t softmax_pick(const std::vector<double>& values, double temperature,
                                RngStream& rng) {
    double vmax = values.front();
    for (double v : values) vmax = std::max(vmax, v);
    double total = 0.0;
    thread_local std::vector<double> weights;
    weights.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        weights[i] = std::exp((values[i] - vmax) / temperature);
        total += weights[i];
    }
    const double u = rng.uniform() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    return values.size() - 1;
}

}  // namespace detail

// Value of every legal move for the current mover, in row-major move order.
inline std::vector<std::pair<Coord, double>> move_values(const GameState& state,
                                                         const GameSpec& spec,
                                                         const AgentWeights& weights) {
    if (state.terminal) throw Error("move_values: state is terminal");
    detail::Workspace ws(std::make_shared<const GameSpec>(spec));
    ws.load(state);
    std::vector<double> values;
    ws.move_values(weights.w_win, weights.w_lose, weights.w_self, weights.w_block, values);
    std::vector<std::pair<Coord, double>> out;
    out.reserve(values.size());
    const auto& legal = ws.legal_cells();
    for (std::size_t i = 0; i < legal.size(); ++i)
        out.emplace_back(ws.coord_of(legal[i]), values[i]);
    return out;
}

// The softmax sampling distribution itself (exposed for tests and analysis).
inline std::vector<double> softmax_probabilities(const std::vector<std::pair<Coord, double>>& values,
                                                 double temperature) {
    if (values.empty()) throw Error("softmax_probabilities: empty value map");
    if (!(temperature > 0.0)) throw Error("softmax_probabilities: temperature must be positive");
    double vmax = values.front().second;
    for (const auto& [move, v] : values) vmax = std::max(vmax, v);
    std::vector<double> probs(values.size());
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        probs[i] = std::exp((values[i].second - vmax) / temperature);
        total += probs[i];
    }
    for (double& p : probs) p /= total;
    return probs;
}

inline Coord softmax_sample(const std::vector<std::pair<Coord, double>>& values,
                            double temperature, RngStream& rng) {
    if (values.empty()) throw Error("softmax_sample: empty value map");
    if (!(temperature > 0.0)) throw Error("softmax_sample: temperature must be positive");
    thread_local std::vector<double> raw;
    raw.clear();
    for (const auto& [move, v] : values) raw.push_back(v);
    return values[detail::softmax_pick(raw, temperature, rng)].first;
}

inline Coord choose_move(const Policy& policy, const GameState& state, const GameSpec& spec,
                         RngStream& rng) {
    if (state.terminal) throw Error("choose_move: state is terminal");
    if (std::holds_alternative<UniformRandom>(policy)) {
        const std::vector<Coord> moves = legal_moves(state);
        return moves[rng.below(moves.size())];
    }
    const HeuristicAgent& agent = std::get<HeuristicAgent>(policy);
    return softmax_sample(move_values(state, spec, agent.weights), agent.temperature, rng);
}

}  // namespace gridplay
