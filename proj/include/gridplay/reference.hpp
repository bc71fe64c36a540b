#pragma once

// The shipped surrogate reference corpus: 121 unique restricted games drawn
// from a fixed seed, screened so the set can serve as a percentile baseline
// of playable games. A sampled game is kept when
//   - validate() reports no diagnostics, and
//   - its self-play draw rate under the default configuration is at most
//     kReferenceMaxDrawRate (never-completing rule sets say nothing about
//     where a game ranks, so they are excluded from the baseline).
// The screen is deterministic: game i in the sampling stream is screened
// with seed mix_seed(kReferenceSeed, i).

#include <cstdio>
#include <string>
#include <unordered_set>
#include <vector>

#include "gridplay/evaluator.hpp"
#include "gridplay/sampler.hpp"
#include "gridplay/validate.hpp"

namespace gridplay {

inline constexpr double kReferenceMaxDrawRate = 0.9;

inline std::vector<GameSpec> reference_games(std::size_t n = 121) {
    SamplerConfig sampler_config;
    RngStream rng(kReferenceSeed);
    FunnessConfig screen_config;
    std::vector<GameSpec> games;
    std::unordered_set<std::string> seen;
    std::size_t stream_index = 0;
    while (games.size() < n) {
        GameSpec game = sample_game(rng, sampler_config);
        const std::uint64_t screen_seed = mix_seed(kReferenceSeed, stream_index++);
        if (!seen.insert(print(game)).second) continue;
        if (!validate(game).empty()) continue;
        if (self_play_stats(game, screen_config, screen_seed).dist.draw >
            kReferenceMaxDrawRate)
            continue;
        games.push_back(std::move(game));
    }
    for (std::size_t i = 0; i < games.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "ref-%03zu", i + 1);
        games[i].name = buf;
    }
    return games;
}

}  // namespace gridplay
