#include <doctest.h>

#include "gridplay/engine.hpp"
#include "gridplay/parse.hpp"

#include "oracles.hpp"

using namespace gridplay;

namespace {

GameSpec ttt() {
    return parse(R"((game "ttt" (board 3 3) (play (place)) (end (win (line 3)))))");
}

GameState play(GameState state, std::initializer_list<Coord> moves) {
    for (const Coord& move : moves) state = apply_move(state, move);
    return state;
}

}  // namespace

TEST_CASE("new_state basics") {
    const GameState state = new_state(ttt());
    CHECK(state.ply == 0);
    CHECK(state.mover == 1);
    CHECK(state.cells.size() == 9);
    for (auto c : state.cells) CHECK(c == 0);
    CHECK_FALSE(state.terminal.has_value());

    const GameSpec opener = parse(
        R"((game "o" (board 4 4) (play (order (prefix 1 1) (cycle 2 1)) (place))
            (end (win (line 3)))))");
    GameState s = new_state(opener);
    CHECK(s.mover == 1);
    s = apply_move(s, {0, 0});
    CHECK(s.mover == 1);  // player 1 opens twice

    const GameState tiny = new_state(parse(
        R"((game "t" (board 1 1) (play (place)) (end (win (line 1)))))"));
    CHECK(tiny.cells.size() == 1);
}

TEST_CASE("legal_moves") {
    GameState state = new_state(ttt());
    CHECK(legal_moves(state).size() == 9);
    CHECK(legal_moves(state).front() == Coord{0, 0});
    state = apply_move(state, {1, 1});
    CHECK(legal_moves(state).size() == 8);

    // a terminal state refuses the query
    const GameSpec one = parse(
        R"((game "t" (board 1 1) (play (place)) (end (win (line 1)))))");
    const GameState done = apply_move(new_state(one), {0, 0});
    CHECK(done.terminal == Outcome::P1Win);
    CHECK_THROWS_AS(legal_moves(done), Error);
    CHECK_THROWS_AS(apply_move(done, {0, 0}), Error);
}

TEST_CASE("apply_move transitions and errors") {
    GameState state = new_state(ttt());
    const GameState next = apply_move(state, {0, 0});
    CHECK(next.at(0, 0) == 1);
    CHECK(next.mover == 2);
    CHECK(next.ply == 1);
    CHECK(state.at(0, 0) == 0);  // input untouched

    CHECK_THROWS_AS(apply_move(next, {0, 0}), Error);   // occupied
    CHECK_THROWS_AS(apply_move(next, {3, 0}), Error);   // out of bounds
    CHECK_THROWS_AS(apply_move(next, {0, -1}), Error);  // out of bounds

    const GameSpec twice = parse(
        R"((game "w" (board 3 3) (play (order (cycle 1 2 2)) (place)) (end (win (line 3)))))");
    GameState s = new_state(twice);
    CHECK(s.mover == 1);
    s = apply_move(s, {0, 0});
    CHECK(s.mover == 2);
    s = apply_move(s, {0, 1});
    CHECK(s.mover == 2);
    s = apply_move(s, {0, 2});
    CHECK(s.mover == 1);
}

TEST_CASE("check_condition core semantics") {
    GameState state = new_state(ttt());
    state = play(state, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(check_condition(state, 1, line(2, DirSet{Dir::H})));
    CHECK_FALSE(check_condition(state, 1, line(3, DirSet{Dir::H})));
    CHECK(check_condition(state, 2, line(2, DirSet{Dir::H})));
    CHECK_FALSE(check_condition(state, 1, line(2, DirSet{Dir::D1})));

    // 2x2 block
    const GameSpec big = parse(
        R"((game "b" (board 4 4) (play (place)) (end (win (line 4)))))");
    GameState blocky = new_state(big);
    blocky = play(blocky, {{0, 0}, {3, 3}, {0, 1}, {3, 2}, {1, 0}, {2, 3}, {1, 1}});
    CHECK(check_condition(blocky, 1, shape(square_offsets(2))));
    CHECK_FALSE(check_condition(blocky, 2, shape(square_offsets(2))));
}

TEST_CASE("count-at-least requires pairwise disjoint instances") {
    // five in a row holds two 4-windows, but they share three cells
    const GameSpec spec = parse(
        R"((game "c" (board 6 6) (play (order (cycle 1)) (place)) (end (win (line 7)))))");
    GameState state = new_state(spec);
    state = play(state, {{2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 4}});
    CHECK(check_condition(state, 1, line(4, DirSet{Dir::H})));
    CHECK_FALSE(check_condition(state, 1, count_at_least(2, line(4, DirSet{Dir::H}))));
    CHECK(check_condition(state, 1, count_at_least(2, line(2, DirSet{Dir::H}))));

    // eight in a row holds two disjoint 4-windows
    state = play(state, {{2, 5}, {3, 0}, {3, 1}});
    CHECK(check_condition(state, 1, count_at_least(2, line(3, DirSet{Dir::H}))));
}

TEST_CASE("terminal_status: effects, scope, order, draw") {
    const GameSpec spec = ttt();

    GameState won = new_state(spec);
    won = play(won, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}});
    CHECK(won.terminal == Outcome::P1Win);
    CHECK(terminal_status(won, spec) == Outcome::P1Win);

    const GameSpec misere = parse(
        R"((game "m" (board 3 3) (play (place)) (end (lose (line 3)))))");
    GameState lost = new_state(misere);
    lost = play(lost, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}});
    CHECK(lost.terminal == Outcome::P2Win);

    // draw when the board fills without a win
    GameState drawn = new_state(spec);
    drawn = play(drawn, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 0}, {2, 0}, {1, 2}, {2, 2}, {2, 1}});
    CHECK(drawn.terminal == Outcome::Draw);
    CHECK(drawn.ply == 9);

    // first firing clause in program order decides
    const GameSpec both = parse(
        R"((game "b" (board 3 3) (play (place))
            (end (lose (line 2 (dirs h))) (win (line 2 (dirs h))))))");
    GameState s = new_state(both);
    s = play(s, {{0, 0}, {1, 0}, {0, 1}});
    CHECK(s.terminal == Outcome::P2Win);  // the lose clause fires first

    const GameSpec reversed = parse(
        R"((game "r" (board 3 3) (play (place))
            (end (win (line 2 (dirs h))) (lose (line 2 (dirs h))))))");
    GameState r = new_state(reversed);
    r = play(r, {{0, 0}, {1, 0}, {0, 1}});
    CHECK(r.terminal == Outcome::P1Win);

    // scope filter: player 2 completing player 1's scoped line does nothing
    const GameSpec scoped = parse(
        R"((game "s" (board 3 3) (play (place)) (end (win (by 1) (line 2 (dirs h))))))");
    GameState sc = new_state(scoped);
    sc = play(sc, {{0, 0}, {2, 0}, {1, 1}, {2, 1}});  // P2 makes two in a row
    CHECK_FALSE(sc.terminal.has_value());
}

TEST_CASE("win-for clause awards the named player") {
    const GameSpec spec = parse(
        R"((game "wf" (board 3 3) (play (place)) (end ((win-for 2) (line 2 (dirs h))))))");
    GameState s = new_state(spec);
    s = play(s, {{0, 0}, {2, 0}, {0, 1}});  // player 1 completes, player 2 wins
    CHECK(s.terminal == Outcome::P2Win);
}

TEST_CASE("condition_progress: line semantics") {
    const GameSpec spec = ttt();
    const GameState empty = new_state(spec);
    CHECK(condition_progress(empty, 1, line(3)) == 0.0);

    // open-ended pair on the top row
    GameState pair = new_state(spec);
    pair.cells[1] = 1;
    pair.cells[2] = 1;
    pair.ply = 2;
    CHECK(condition_progress(pair, 1, line(3, DirSet{Dir::H})) == doctest::Approx(2.0 / 3.0));

    // the same pair fully flanked is dead; other rows blocked too
    const GameSpec wide = parse(
        R"((game "w" (board 1 4) (play (place)) (end (win (line 3 (dirs h))))))");
    GameState flanked = new_state(wide);
    flanked.cells = {2, 1, 1, 2};
    flanked.ply = 4;
    CHECK(condition_progress(flanked, 1, line(3, DirSet{Dir::H})) == 0.0);

    // completion pins progress at 1 even for longer runs
    GameState run = new_state(parse(
        R"((game "r" (board 1 5) (play (order (cycle 1)) (place)) (end (win (line 6)))))"));
    run.cells = {1, 1, 1, 1, 0};
    run.ply = 4;
    CHECK(condition_progress(run, 1, line(3, DirSet{Dir::H})) == 1.0);
    CHECK(condition_progress(run, 1, line(4, DirSet{Dir::H})) == 1.0);
    CHECK(condition_progress(run, 1, line(5, DirSet{Dir::H})) == doctest::Approx(4.0 / 5.0));
}

TEST_CASE("condition_progress: shape, count, composition, board-full") {
    const GameSpec spec = parse(
        R"((game "s" (board 4 4) (play (place)) (end (win (line 4)))))");
    GameState state = new_state(spec);
    state.cells[0] = 1;   // (0,0)
    state.cells[1] = 1;   // (0,1)
    state.ply = 2;
    const Condition square2 = shape(square_offsets(2));
    CHECK(condition_progress(state, 1, square2) == doctest::Approx(0.5));

    // opponent pieces void every 2x2 window containing an own piece
    state.cells[4] = 2;  // (1,0)
    state.cells[5] = 2;  // (1,1)
    state.ply = 4;
    CHECK(condition_progress(state, 1, square2) == 0.0);

    // count: one complete disjoint instance plus a half-done second
    GameState counted = new_state(parse(
        R"((game "c" (board 1 7) (play (order (cycle 1)) (place)) (end (win (line 7)))))"));
    counted.cells = {1, 1, 0, 0, 1, 0, 0};
    counted.ply = 3;
    const Condition two_pairs = count_at_least(2, line(2, DirSet{Dir::H}));
    CHECK(condition_progress(counted, 1, two_pairs) == doctest::Approx((1.0 + 0.5) / 2.0));

    // and = mean, or = max
    const Condition h2 = line(2, DirSet{Dir::H});
    const Condition v2 = line(2, DirSet{Dir::V});
    GameState mixed = new_state(spec);
    mixed.cells[0] = 1;
    mixed.ply = 1;
    CHECK(condition_progress(mixed, 1, all_of({h2, v2})) == doctest::Approx(0.5));
    CHECK(condition_progress(mixed, 1, any_of({h2, v2})) == doctest::Approx(0.5));

    GameState filling = new_state(spec);
    filling.cells[0] = 1;
    filling.cells[1] = 2;
    filling.ply = 2;
    CHECK(condition_progress(filling, 1, board_full()) == doctest::Approx(2.0 / 16.0));
}

TEST_CASE("engine matches the brute-force oracle on random positions") {
    RngStream rng(2024);
    for (int i = 0; i < 120; ++i) {
        const GameSpec spec = oracles::random_spec(rng);
        if (spec.board.cell_count() > 36) continue;
        const GameState state = oracles::random_position(spec, rng, rng.uniform());
        const Condition cond = oracles::random_condition(rng, 2);
        for (int player : {1, 2}) {
            const bool expected = oracles::brute_check(state, player, cond);
            CHECK(check_condition(state, player, cond) == expected);
            // progress reaches 1 exactly on satisfied conditions
            const double progress = condition_progress(state, player, cond);
            CHECK(progress >= 0.0);
            CHECK(progress <= 1.0);
            if (!cond.is<AllCond>() && !cond.is<AnyCond>())
                CHECK((progress == 1.0) == expected);
        }
    }
}

TEST_CASE("player-swap symmetry of conditions") {
    RngStream rng(555);
    const GameSpec spec = parse(
        R"((game "b" (board 5 5) (play (place)) (end (win (line 9)))))");
    for (int i = 0; i < 100; ++i) {
        GameState state = oracles::random_position(spec, rng, 0.5);
        GameState swapped = state;
        for (auto& cell : swapped.cells)
            cell = cell == 0 ? 0 : static_cast<std::int8_t>(3 - cell);
        const Condition cond = oracles::random_condition(rng, 2);
        CHECK(check_condition(state, 1, cond) == check_condition(swapped, 2, cond));
        CHECK(check_condition(state, 2, cond) == check_condition(swapped, 1, cond));
        CHECK(condition_progress(state, 1, cond) ==
              doctest::Approx(condition_progress(swapped, 2, cond)));
    }
}

TEST_CASE("conservation and monotone fill over random playouts") {
    RngStream rng(99);
    for (int round = 0; round < 30; ++round) {
        const GameSpec spec = oracles::random_spec(rng);
        if (spec.board.cell_count() > 49) continue;
        GameState state = new_state(spec);
        std::size_t last_legal = state.cells.size() + 1;
        while (!state.terminal) {
            const auto moves = legal_moves(state);
            CHECK(moves.size() == last_legal - 1);
            last_legal = moves.size();
            int filled = 0;
            for (auto c : state.cells) filled += c != 0;
            CHECK(filled == state.ply);
            state = apply_move(state, moves[rng.below(moves.size())]);
        }
    }
}
