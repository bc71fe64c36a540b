#pragma once

// Heuristic random generator over the restricted game design space. Board
// sides are uniform on {board_min..board_max}; the target line length is
// uniform on {k_min..max side}; each of four deviations from the plain
// k-in-a-row baseline (asymmetric targets, direction restriction, double
// opening move, misere inversion) fires independently with deviation_prob.

#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <vector>

#include "gridplay/game.hpp"
#include "gridplay/print.hpp"
#include "gridplay/rng.hpp"

namespace gridplay {

struct SamplerConfig {
    int board_min = 1;
    int board_max = 12;
    double deviation_prob = 0.1;
    int k_min = 2;
    std::uint64_t seed = 0;
};

// Which deviations fired while sampling one game (for calibration tests).
struct SampleTrace {
    bool asymmetric_k = false;
    bool direction_restriction = false;
    bool double_move = false;
    bool misere = false;
};

inline GameSpec sample_game(RngStream& rng, const SamplerConfig& config,
                            SampleTrace* trace = nullptr) {
    if (config.board_min < 1 || config.board_max < config.board_min)
        throw Error("sampler: invalid board size range");
    const auto draw_side = [&] {
        return config.board_min +
               static_cast<int>(rng.below(
                   static_cast<std::uint64_t>(config.board_max - config.board_min + 1)));
    };
    const int rows = draw_side();
    const int cols = draw_side();

    // k ranges over {k_min .. max side}; degenerate boards fall back to k_min.
    const int k_hi = std::max(config.k_min, std::max(rows, cols));
    const auto draw_k = [&] {
        return config.k_min +
               static_cast<int>(rng.below(static_cast<std::uint64_t>(k_hi - config.k_min + 1)));
    };
    const int k1 = draw_k();

    SampleTrace local;
    local.asymmetric_k = rng.bernoulli(config.deviation_prob);
    const int k2 = local.asymmetric_k ? draw_k() : k1;

    DirSet dirs1 = DirSet::all();
    DirSet dirs2 = DirSet::all();
    local.direction_restriction = rng.bernoulli(config.deviation_prob);
    if (local.direction_restriction) {
        // nonempty proper subsets of the four directions are masks 1..14
        const auto draw_subset = [&] {
            return DirSet{static_cast<std::uint8_t>(1 + rng.below(14))};
        };
        const std::uint64_t target = rng.below(3);
        if (target == 0) {
            dirs1 = draw_subset();
        } else if (target == 1) {
            dirs2 = draw_subset();
        } else {
            dirs1 = draw_subset();
            dirs2 = draw_subset();
        }
    }

    GameSpec spec;
    spec.name = "sampled";
    spec.board = BoardSpec{rows, cols};

    local.double_move = rng.bernoulli(config.deviation_prob);
    if (local.double_move) {
        const int opener = 1 + static_cast<int>(rng.below(2));
        spec.schedule.prefix = {opener, opener};
        spec.schedule.cycle = {3 - opener, opener};
    }

    local.misere = rng.bernoulli(config.deviation_prob);
    const Effect effect = local.misere ? Effect::LoseForMover : Effect::WinForMover;

    if (k1 == k2 && dirs1 == dirs2) {
        EndClause clause;
        clause.effect = effect;
        clause.condition = line(k1, dirs1);
        spec.end_clauses.push_back(std::move(clause));
    } else {
        EndClause first;
        first.effect = effect;
        first.only_mover = 1;
        first.condition = line(k1, dirs1);
        EndClause second;
        second.effect = effect;
        second.only_mover = 2;
        second.condition = line(k2, dirs2);
        spec.end_clauses.push_back(std::move(first));
        spec.end_clauses.push_back(std::move(second));
    }

    if (trace) *trace = local;
    return normalized(std::move(spec));
}

// Rejection-samples until n structurally distinct games (by canonical print)
// are collected, preserving sampling order. Fails once 100*n consecutive
// duplicates arrive, which signals an exhausted design space.
inline std::vector<GameSpec> sample_unique_games(std::size_t n, RngStream& rng,
                                                 const SamplerConfig& config) {
    if (n < 1) throw Error("sample_unique_games: n must be >= 1");
    std::vector<GameSpec> games;
    std::unordered_set<std::string> seen;
    std::size_t consecutive_rejections = 0;
    const std::size_t rejection_limit = 100 * n;
    while (games.size() < n) {
        GameSpec game = sample_game(rng, config);
        if (seen.insert(print(game)).second) {
            games.push_back(std::move(game));
            consecutive_rejections = 0;
        } else if (++consecutive_rejections >= rejection_limit) {
            throw Error("sample_unique_games: design space exhausted after " +
                        std::to_string(rejection_limit) +
                        " consecutive duplicates (collected " +
                        std::to_string(games.size()) + " of " + std::to_string(n) + ")");
        }
    }
    for (std::size_t i = 0; i < games.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "sample-%05zu", i + 1);
        games[i].name = buf;
    }
    return games;
}

// Seed of the shipped surrogate reference corpus (see reference.hpp).
inline constexpr std::uint64_t kReferenceSeed = 121121;

}  // namespace gridplay
