// Acceptance suite: one self-contained check per shipping criterion, each
// printing a single PASS/FAIL line. Exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gridplay/corpus.hpp"
#include "gridplay/evaluator.hpp"
#include "gridplay/maxent.hpp"
#include "gridplay/parallel.hpp"
#include "gridplay/parse.hpp"
#include "gridplay/print.hpp"
#include "gridplay/reference.hpp"
#include "gridplay/report.hpp"
#include "gridplay/sampler.hpp"
#include "gridplay/validate.hpp"

#include "oracles.hpp"

using namespace gridplay;

namespace {

constexpr std::uint64_t kSuiteSeed = 20250808;

unsigned worker_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : hw;
}

struct Outcome9 {
    bool pass = false;
    std::string detail;
};

// --- criterion 1: parser round trip ----------------------------------------

std::vector<std::string> fixture_corpus() {
    std::vector<std::string> programs{
        // asymmetric-direction 10x10 game with an explicit draw rule
        R"((game "diag-vs-orth" (board 10 10) (play (order (cycle 1 2)) (place))
            (end (win (by 1) (line 3 (dirs d1 d2)))
                 (win (by 2) (line 3 (dirs h v)))
                 (draw (full)))))",
        R"((game "ttt" (board 3 3) (play (place)) (end (win (line 3)))))",
        R"((game "misere-4x4" (board 4 4) (play (place)) (end (lose (line 3)))))",
        R"((game "double-open" (board 7 7) (play (order (prefix 1 1) (cycle 2 1)) (place))
            (end (win (line 4)))))",
        R"((game "second-twice" (board 5 5) (play (order (cycle 1 2 2)) (place))
            (end (win (line 4 (dirs h v))))))",
        R"((game "square-race" (board 6 6) (play (place)) (end (win (square 2)))))",
        R"((game "big-square" (board 8 8) (play (place)) (end (lose (square 3)))))",
        R"((game "plus-sign" (board 9 9) (play (place)) (end (win (plus 5)))))",
        R"((game "plus-9" (board 11 11) (play (place)) (end (win (plus 9)))))",
        R"((game "ell-5" (board 10 10) (play (place)) (end (win (ell 5)))))",
        R"((game "ell-3" (board 4 4) (play (place)) (end (win (ell 3)))))",
        R"((game "custom-shape" (board 6 6) (play (place))
            (end (win (shape (cells (0 0) (1 1) (2 0)) rot)))))",
        R"((game "mirror-shape" (board 6 6) (play (place))
            (end (win (shape (cells (0 0) (0 1) (1 0)) refl)))))",
        R"((game "free-shape" (board 5 7) (play (place))
            (end (win (shape (cells (0 0) (1 2) (0 3)) rot refl)))))",
        R"((game "match-twice" (board 6 10) (play (place)) (end (win (count 2 (line 4))))))",
        R"((game "three-pairs" (board 8 8) (play (place))
            (end (win (count 3 (line 2 (dirs h)))))))",
        R"((game "two-squares" (board 9 9) (play (place)) (end (win (count 2 (square 2))))))",
        R"((game "both-goals" (board 7 7) (play (place))
            (end (win (and (line 3 (dirs h)) (line 3 (dirs v)))))))",
        R"((game "either-goal" (board 7 7) (play (place))
            (end (lose (or (line 3) (square 2))))))",
        R"((game "nested" (board 9 9) (play (place))
            (end (win (or (and (line 3 (dirs h v)) (count 2 (line 2 (dirs d1 d2))))
                          (plus 5))))))",
        R"((game "win-for-other" (board 5 5) (play (place))
            (end ((win-for 2) (line 3 (dirs h))) ((win-for 1) (by 2) (line 3 (dirs v))))))",
        R"((game "full-win" (board 2 2) (play (place)) (end (win (full)))))",
        R"((game "line-draw" (board 5 5) (play (place))
            (end (win (line 4)) (draw (line 3 (dirs d1 d2))))))",
        R"((game "solo" (board 3 4) (play (order (cycle 1)) (place)) (end (win (count 2 (line 3))))))",
        R"((game "prefix-empty" (board 3 3) (play (order (prefix) (cycle 2 1)) (place))
            (end (win (line 3)))))",
        R"((game "tiny" (board 1 1) (play (place)) (end (win (line 1)))))",
        R"((game "skinny" (board 1 12) (play (place)) (end (win (line 5 (dirs h))))))",
        R"((game "tall" (board 12 1) (play (place)) (end (lose (line 2 (dirs v))))))",
    };
    // line-length and direction sweeps to fill out the corpus
    const char* dir_sets[] = {"h", "v", "d1", "d2", "h v", "d1 d2", "h d1", "v d2", "h v d1 d2"};
    for (int k = 2; k <= 6; ++k) {
        for (const char* dirs : {dir_sets[(k + 0) % 9], dir_sets[(k + 4) % 9]}) {
            std::ostringstream program;
            program << "(game \"line-" << k << "-" << dirs << "\" (board " << k + 4 << " "
                    << k + 5 << ") (play (place)) (end (win (line " << k << " (dirs " << dirs
                    << ")))))";
            programs.push_back(program.str());
        }
    }
    for (int k = 2; k <= 5; ++k) {
        std::ostringstream program;
        program << "(game \"misere-line-" << k << "\" (board " << k + 2 << " " << k + 2
                << ") (play (order (prefix 2) (cycle 1 2)) (place)) (end (lose (line " << k
                << "))))";
        programs.push_back(program.str());
    }
    for (int n = 2; n <= 4; ++n) {
        std::ostringstream program;
        program << "(game \"count-" << n << "\" (board 10 10) (play (place)) (end (win (count "
                << n << " (line 3 (dirs h v))))))";
        programs.push_back(program.str());
    }
    for (int side = 2; side <= 4; ++side) {
        std::ostringstream program;
        program << "(game \"sq-" << side << "\" (board 9 9) (play (place)) (end (win (square "
                << side << "))))";
        programs.push_back(program.str());
    }
    for (int arm = 1; arm <= 3; ++arm) {
        std::ostringstream program;
        program << "(game \"plus-arm-" << arm << "\" (board 11 11) (play (place)) "
                << "(end (win (plus " << 4 * arm + 1 << "))))";
        programs.push_back(program.str());
    }
    return programs;
}

void count_condition_kinds(const Condition& cond, std::map<std::string, int>& kinds) {
    struct Visitor {
        std::map<std::string, int>& kinds;
        void operator()(const LineCond&) const { kinds["line"] += 1; }
        void operator()(const ShapeCond&) const { kinds["shape"] += 1; }
        void operator()(const CountCond& c) const {
            kinds["count"] += 1;
            count_condition_kinds(c.inner.front(), kinds);
        }
        void operator()(const AllCond& c) const {
            kinds["and"] += 1;
            for (const Condition& child : c.children) count_condition_kinds(child, kinds);
        }
        void operator()(const AnyCond& c) const {
            kinds["or"] += 1;
            for (const Condition& child : c.children) count_condition_kinds(child, kinds);
        }
        void operator()(const BoardFullCond&) const { kinds["full"] += 1; }
    };
    std::visit(Visitor{kinds}, cond.node);
}

Outcome9 criterion1() {
    const std::vector<std::string> programs = fixture_corpus();
    if (programs.size() < 50)
        return {false, "fixture corpus has only " + std::to_string(programs.size()) + " games"};
    std::map<std::string, int> kinds;
    std::map<Effect, int> effects;
    std::size_t ok = 0;
    for (const std::string& text : programs) {
        GameSpec spec;
        try {
            spec = parse(text);
        } catch (const Error& e) {
            return {false, "fixture failed to parse: " + std::string(e.what())};
        }
        const std::string canonical = print(spec);
        const GameSpec reparsed = parse(canonical);
        if (!(reparsed == spec)) return {false, "round trip changed: " + canonical};
        if (print(reparsed) != canonical) return {false, "print not idempotent: " + canonical};
        for (const EndClause& clause : spec.end_clauses) {
            count_condition_kinds(clause.condition, kinds);
            effects[clause.effect] += 1;
        }
        ++ok;
    }
    for (const char* kind : {"line", "shape", "count", "and", "or", "full"})
        if (kinds[kind] == 0) return {false, std::string("no fixture uses condition ") + kind};
    if (effects.size() != 4) return {false, "fixture corpus does not span all clause effects"};
    return {true, std::to_string(ok) + "/" + std::to_string(programs.size()) +
                      " games round-trip, all condition variants covered"};
}

// --- criterion 2: engine oracle ---------------------------------------------

Outcome9 criterion2() {
    struct Case {
        const char* name;
        const char* program;
    };
    const Case cases[] = {
        {"3x3 k3", R"((game "t" (board 3 3) (play (place)) (end (win (line 3)))))"},
        {"2x3 k3", R"((game "s" (board 2 3) (play (place)) (end (win (line 3)))))"},
    };
    std::ostringstream detail;
    for (const Case& c : cases) {
        const GameSpec spec = parse(c.program);
        const oracles::ExactPlay exact = oracles::exact_uniform_play(spec);
        const int n = 100000;
        detail::Workspace ws(std::make_shared<const GameSpec>(spec));
        const Policy random = UniformRandom{};
        long long w1 = 0, d = 0, w2 = 0;
        for (int i = 0; i < n; ++i) {
            RngStream rng(kSuiteSeed, static_cast<std::uint64_t>(i));
            const auto [outcome, length] = detail::run_playout_ws(ws, random, random, rng);
            (void)length;
            w1 += outcome == Outcome::P1Win;
            d += outcome == Outcome::Draw;
            w2 += outcome == Outcome::P2Win;
        }
        const double p1 = double(w1) / n, draw = double(d) / n, p2 = double(w2) / n;
        const double err = std::max({std::abs(p1 - exact.dist.p1),
                                     std::abs(draw - exact.dist.draw),
                                     std::abs(p2 - exact.dist.p2)});
        detail << c.name << " max|err| " << err << " (exact " << exact.dist.p1 << "/"
               << exact.dist.draw << "/" << exact.dist.p2 << ")  ";
        if (err > 0.01) return {false, detail.str()};
    }
    return {true, detail.str()};
}

// --- criterion 3: progress soundness ----------------------------------------

Outcome9 criterion3() {
    const std::vector<Condition> battery{
        line(3),
        line(2, DirSet{Dir::H}),
        line(3, DirSet{Dir::D1, Dir::D2}),
        shape(square_offsets(2)),
        count_at_least(2, line(2, DirSet{Dir::H})),
        count_at_least(2, line(3)),
        all_of({line(2, DirSet{Dir::H}), line(2, DirSet{Dir::V})}),
        any_of({line(3, DirSet{Dir::H}), shape(square_offsets(2))}),
    };
    long long states_checked = 0;
    for (const auto [rows, cols] : {std::pair{3, 3}, std::pair{3, 4}}) {
        const GameSpec spec = parse("(game \"b\" (board " + std::to_string(rows) + " " +
                                    std::to_string(cols) +
                                    ") (play (place)) (end (win (line 9))))");
        GameState state = new_state(spec);
        const int cells = rows * cols;
        std::vector<std::int8_t> board(static_cast<std::size_t>(cells), 0);
        // every assignment with a legal piece-count parity (superset of the
        // states reachable under alternation)
        std::function<Outcome9(int, int, int)> walk = [&](int idx, int c1,
                                                          int c2) -> Outcome9 {
            if (idx == cells) {
                if (c1 - c2 != 0 && c1 - c2 != 1) return {true, ""};
                state.cells = board;
                state.ply = c1 + c2;
                ++states_checked;
                for (const Condition& cond : battery) {
                    for (int player : {1, 2}) {
                        const bool holds = check_condition(state, player, cond);
                        const double progress = condition_progress(state, player, cond);
                        if ((progress == 1.0) != holds || progress < 0.0 || progress > 1.0) {
                            std::ostringstream detail;
                            detail << "mismatch on " << rows << "x" << cols << " player "
                                   << player << " (progress " << progress << ", check "
                                   << holds << ") board";
                            for (auto v : board) detail << ' ' << int(v);
                            return {false, detail.str()};
                        }
                    }
                }
                return {true, ""};
            }
            for (std::int8_t piece : {0, 1, 2}) {
                if (piece == 1 && c1 + 1 > (cells + 1) / 2) continue;
                if (piece == 2 && c2 + 1 > cells / 2) continue;
                board[static_cast<std::size_t>(idx)] = piece;
                const Outcome9 sub =
                    walk(idx + 1, c1 + (piece == 1), c2 + (piece == 2));
                if (!sub.pass) return sub;
            }
            board[static_cast<std::size_t>(idx)] = 0;
            return {true, ""};
        };
        const Outcome9 result = walk(0, 0, 0);
        if (!result.pass) return result;
    }
    return {true, std::to_string(states_checked) + " states x 8 conditions x 2 players"};
}

// --- criterion 4: outcome statistics unit suite ------------------------------

Outcome9 criterion4() {
    const double eps = 1e-12;
    const struct {
        const char* name;
        double got;
        double want;
    } checks[] = {
        {"emd(.5,0,.5)", balance_emd({0.5, 0.0, 0.5}), 0.0},
        {"emd(1,0,0)", balance_emd({1.0, 0.0, 0.0}), 1.0},
        {"emd(0,1,0)", balance_emd({0.0, 1.0, 0.0}), 1.0},
        {"entropy(1,0,0)", outcome_entropy({1.0, 0.0, 0.0}), 0.0},
        {"entropy(uniform)", outcome_entropy({1.0 / 3, 1.0 / 3, 1.0 / 3}), std::log(3.0)},
        {"payoff(.5,0,.5)", expected_payoff({0.5, 0.0, 0.5}), 0.0},
        {"payoff(.25,.5,.25)", expected_payoff({0.25, 0.5, 0.25}), 0.0},
    };
    for (const auto& check : checks)
        if (std::abs(check.got - check.want) > eps)
            return {false, std::string(check.name) + " off by " +
                               std::to_string(check.got - check.want)};
    return {true, "7 pinned values exact to 1e-12"};
}

// --- criterion 5: ordinal funness anchors ------------------------------------

Outcome9 criterion5() {
    const FunnessConfig config;
    const std::vector<GameSpec> reference = reference_games();
    std::vector<double> reference_u(reference.size());
    parallel_for(reference.size(), worker_threads(), [&](std::size_t i) {
        reference_u[i] = funness(reference[i], config, mix_seed(kSuiteSeed ^ 0x0ef5, i)).u_sim;
    });

    const GameSpec small = parse(R"((game "a" (board 2 3) (play (place)) (end (win (line 3)))))");
    const GameSpec ttt = parse(R"((game "b" (board 3 3) (play (place)) (end (win (line 3)))))");
    const GameSpec big = parse(R"((game "c" (board 10 10) (play (place)) (end (win (line 5)))))");

    struct AnchorRun {
        double u_small, u_ttt, u_big;
    };
    std::vector<AnchorRun> runs(10);
    parallel_for(runs.size() * 3, worker_threads(), [&](std::size_t task) {
        const std::size_t s = task % runs.size();
        switch (task / runs.size()) {
            case 0: runs[s].u_small = funness(small, config, mix_seed(kSuiteSeed, 100 + s)).u_sim; break;
            case 1: runs[s].u_ttt = funness(ttt, config, mix_seed(kSuiteSeed, 200 + s)).u_sim; break;
            default: runs[s].u_big = funness(big, config, mix_seed(kSuiteSeed, 300 + s)).u_sim; break;
        }
    });

    std::ostringstream detail;
    for (std::size_t s = 0; s < runs.size(); ++s) {
        const double p_small = percentile(runs[s].u_small, reference_u);
        const double p_ttt = percentile(runs[s].u_ttt, reference_u);
        const double p_big = percentile(runs[s].u_big, reference_u);
        const bool ok = p_small < 10.0 && p_ttt >= 30.0 && p_ttt <= 70.0 && p_big > 85.0 &&
                        runs[s].u_small < runs[s].u_ttt && runs[s].u_ttt < runs[s].u_big;
        if (!ok) {
            detail << "seed " << s << ": pct(2x3)=" << p_small << " pct(ttt)=" << p_ttt
                   << " pct(10x10)=" << p_big << " u=(" << runs[s].u_small << ","
                   << runs[s].u_ttt << "," << runs[s].u_big << ")";
            return {false, detail.str()};
        }
    }
    detail << "10/10 seeds: pct(2x3)<10, pct(ttt) in [30,70], pct(10x10 k5)>85, ordering holds";
    return {true, detail.str()};
}

// --- criterion 6: player-swap antisymmetry -----------------------------------

Outcome9 criterion6() {
    SamplerConfig sampler_config;
    RngStream spec_rng(kSuiteSeed + 6);
    FunnessConfig config;
    config.n_selfplay = 10000;

    std::vector<GameSpec> games;
    while (games.size() < 20) games.push_back(sample_game(spec_rng, sampler_config));

    std::vector<PlayoutStats> straight(games.size()), swapped(games.size());
    parallel_for(games.size() * 2, worker_threads(), [&](std::size_t task) {
        const std::size_t i = task % games.size();
        if (task < games.size())
            straight[i] = self_play_stats(games[i], config, mix_seed(kSuiteSeed, 600 + i));
        else
            swapped[i] =
                self_play_stats(swap_players(games[i]), config, mix_seed(kSuiteSeed, 700 + i));
    });

    const double n = config.n_selfplay;
    double worst_sigma = 0.0;
    for (std::size_t i = 0; i < games.size(); ++i) {
        const double pairs[3][2] = {{straight[i].dist.p1, swapped[i].dist.p2},
                                    {straight[i].dist.draw, swapped[i].dist.draw},
                                    {straight[i].dist.p2, swapped[i].dist.p1}};
        for (const auto& pair : pairs) {
            const double pooled = 0.5 * (pair[0] + pair[1]);
            const double se = std::sqrt(std::max(pooled * (1.0 - pooled), 1e-12) * 2.0 / n);
            const double sigma = std::abs(pair[0] - pair[1]) / se;
            worst_sigma = std::max(worst_sigma, sigma);
            if (sigma > 3.0)
                return {false, "game " + std::to_string(i) + " (" + print(games[i]) +
                                   ") deviates by " + std::to_string(sigma) + " sigma"};
        }
    }
    return {true, "20 games, worst deviation " + std::to_string(worst_sigma) + " sigma"};
}

// --- criterion 7: sampler statistics -----------------------------------------

Outcome9 criterion7() {
    SamplerConfig config;
    RngStream rng(kSuiteSeed + 7);
    const int n = 100000;
    long long asym = 0, dirres = 0, dbl = 0, mis = 0;
    std::vector<long long> rows(12, 0), cols(12, 0);
    for (int i = 0; i < n; ++i) {
        SampleTrace trace;
        const GameSpec spec = sample_game(rng, config, &trace);
        asym += trace.asymmetric_k;
        dirres += trace.direction_restriction;
        dbl += trace.double_move;
        mis += trace.misere;
        rows[static_cast<std::size_t>(spec.board.rows - 1)] += 1;
        cols[static_cast<std::size_t>(spec.board.cols - 1)] += 1;
    }
    std::ostringstream detail;
    detail.precision(4);
    const struct {
        const char* name;
        long long count;
    } deviations[] = {{"asym-k", asym}, {"dirs", dirres}, {"double", dbl}, {"misere", mis}};
    for (const auto& d : deviations) {
        const double freq = static_cast<double>(d.count) / n;
        detail << d.name << " " << freq << " ";
        if (freq < 0.095 || freq > 0.105)
            return {false, detail.str() + "(outside 0.100 +- 0.005)"};
    }
    // chi-square uniformity on {1..12}: 11 dof, p > 0.01 needs stat < 24.725
    const double rows_stat = oracles::chi_square_statistic(rows, n / 12.0);
    const double cols_stat = oracles::chi_square_statistic(cols, n / 12.0);
    detail << "chi2(rows) " << rows_stat << " chi2(cols) " << cols_stat << " ";
    if (rows_stat >= 24.725 || cols_stat >= 24.725)
        return {false, detail.str() + "(uniformity rejected at p=0.01)"};

    RngStream unique_rng(kSuiteSeed + 77);
    const auto unique = sample_unique_games(1000, unique_rng, config);
    std::unordered_set<std::string> prints;
    for (const GameSpec& g : unique) prints.insert(print(g));
    if (prints.size() != 1000)
        return {false, "sample_unique_games returned duplicate canonical prints"};
    detail << "1000 unique prints";
    return {true, detail.str()};
}

// --- criterion 8: maxent correctness -----------------------------------------

Outcome9 criterion8() {
    // constant feature selects the null
    {
        RngStream rng(1);
        std::vector<ScoredGame> background, presence;
        for (int i = 0; i < 200; ++i)
            background.push_back({"b" + std::to_string(i), -3.0 + rng.uniform(), 0.3, false});
        for (int i = 0; i < 50; ++i) {
            presence.push_back(background[rng.below(background.size())]);
            presence.back().is_presence = true;
        }
        const MaxEntFit fit = fit_sweep(presence, background, FitConfig{});
        if (fit.theta_hat != 0.0)
            return {false, "constant-feature null picked theta " + std::to_string(fit.theta_hat)};

        // normalization across the whole grid
        for (double theta : FitConfig{}.theta_grid) {
            const double log_z = log_partition(background, theta);
            double total = 0.0;
            for (const ScoredGame& g : background)
                total += std::exp(game_score(g, theta) - log_z);
            if (std::abs(total - 1.0) > 1e-9)
                return {false, "normalization off by " + std::to_string(total - 1.0) +
                                   " at theta " + std::to_string(theta)};
        }
    }

    // hand-computed two-game likelihood
    {
        const std::vector<ScoredGame> presence{{"p", -1.0, 1.0, true}};
        const std::vector<ScoredGame> background{{"p", -1.0, 1.0, false},
                                                 {"q", -1.0, 0.0, false}};
        const double got = dataset_log_likelihood(presence, background, 1.0, 0.0);
        const double want = -std::log(1.0 + std::exp(-1.0));
        if (std::abs(got - want) > 1e-12)
            return {false, "two-game likelihood off by " + std::to_string(got - want)};
    }

    // synthetic recovery with theta* = 5 over a 1000-game background
    int recovered = 0, significant = 0;
    const int replicates = 20;
    for (int r = 0; r < replicates; ++r) {
        RngStream rng(kSuiteSeed + 800 + r);
        std::vector<ScoredGame> background;
        for (int i = 0; i < 1000; ++i)
            background.push_back(
                {"b" + std::to_string(i), -4.0 + 2.0 * rng.uniform(), rng.uniform(), false});
        std::vector<double> weights(background.size());
        double total = 0.0;
        for (std::size_t i = 0; i < background.size(); ++i) {
            weights[i] = std::exp(game_score(background[i], 5.0));
            total += weights[i];
        }
        std::vector<ScoredGame> presence;
        for (int i = 0; i < 400; ++i) {
            const double u = rng.uniform() * total;
            double cum = 0.0;
            std::size_t pick = background.size() - 1;
            for (std::size_t j = 0; j < background.size(); ++j) {
                cum += weights[j];
                if (u < cum) {
                    pick = j;
                    break;
                }
            }
            presence.push_back(background[pick]);
            presence.back().is_presence = true;
        }
        const MaxEntFit fit = fit_sweep(presence, background, FitConfig{});
        recovered += fit.theta_hat >= 4.0 && fit.theta_hat <= 6.0;
        significant += likelihood_ratio_test(fit).first > 3.84;
    }
    std::ostringstream detail;
    detail << "null exact, normalization <=1e-9, hand value <=1e-12, recovery " << recovered
           << "/20 in [4,6], LRT significant " << significant << "/20";
    if (recovered < 19 || significant < 19) return {false, detail.str()};
    return {true, detail.str()};
}

// --- criterion 9: determinism and throughput ----------------------------------

Outcome9 criterion9() {
#ifndef GRIDPLAY_CLI_PATH
    return {false, "CLI path not configured"};
#else
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gridplay_acceptance";
    fs::create_directories(dir);
    const fs::path corpus = dir / "corpus500.jsonl";
    const fs::path reference = dir / "reference3.jsonl";
    const std::string cli = GRIDPLAY_CLI_PATH;

    {
        SamplerConfig config;
        RngStream rng(kSuiteSeed + 9);
        const auto games = sample_unique_games(500, rng, config);
        std::vector<CorpusRecord> records;
        for (const GameSpec& game : games)
            records.push_back({game.name, print(game), std::nullopt, {}, {}});
        save_corpus(records, corpus);
        std::vector<CorpusRecord> tiny(records.begin(), records.begin() + 3);
        save_corpus(tiny, reference);
    }

    auto run_eval = [&](const fs::path& out, unsigned threads) {
        std::ostringstream cmd;
        cmd << '"' << cli << "\" eval \"" << corpus.string() << "\" --seed 11 --reference \""
            << reference.string() << "\" --threads " << threads << " --out \"" << out.string()
            << '"';
        return std::system(cmd.str().c_str());
    };
    auto file_bytes = [](const fs::path& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };

    const fs::path out_a = dir / "run_a.csv", out_b = dir / "run_b.csv",
                   out_c = dir / "run_single.csv";
    const auto started = std::chrono::steady_clock::now();
    if (run_eval(out_a, worker_threads()) != 0) return {false, "eval run A failed"};
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (run_eval(out_b, worker_threads()) != 0) return {false, "eval run B failed"};
    if (run_eval(out_c, 1) != 0) return {false, "single-thread eval failed"};

    const std::string bytes_a = file_bytes(out_a);
    if (bytes_a.empty()) return {false, "eval produced no output"};
    if (bytes_a != file_bytes(out_b)) return {false, "repeat run differs byte-wise"};
    if (bytes_a != file_bytes(out_c)) return {false, "single-thread run differs byte-wise"};

    // the eval guard refuses oversized boards unless --max-cells raises it
    const fs::path big = dir / "big.jsonl";
    save_corpus({{"big",
                  R"((game "big" (board 13 13) (play (place)) (end (win (line 5)))))",
                  std::nullopt,
                  {},
                  {}}},
                big);
    std::ostringstream refused;
    refused << '"' << cli << "\" eval \"" << big.string() << "\" --seed 1 --reference \""
            << reference.string() << "\" --out \"" << (dir / "big.csv").string()
            << "\" 2> /dev/null";
    if (std::system(refused.str().c_str()) == 0)
        return {false, "eval accepted a 13x13 board without --max-cells"};

    std::ostringstream detail;
    detail << "500 games x3 runs byte-identical, full evaluation " << static_cast<int>(seconds)
           << " s (budget 900 s)";
    return {seconds < 900.0, detail.str()};
#endif
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        Outcome9 (*run)();
    };
    const Criterion criteria[] = {
        {1, "parser round-trip", criterion1},
        {2, "engine oracle vs exhaustive enumeration", criterion2},
        {3, "progress soundness (exhaustive)", criterion3},
        {4, "balance/entropy/payoff unit suite", criterion4},
        {5, "ordinal funness anchors", criterion5},
        {6, "player-swap antisymmetry", criterion6},
        {7, "sampler statistics", criterion7},
        {8, "maxent correctness", criterion8},
        {9, "determinism and throughput", criterion9},
    };
    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto started = std::chrono::steady_clock::now();
        Outcome9 result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::printf("%s criterion %d: %s (%.1f s) — %s\n", result.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.name, seconds, result.detail.c_str());
        std::fflush(stdout);
        failures += !result.pass;
    }
    if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
