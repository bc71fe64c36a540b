#pragma once

// Core value types for two-player grid placement games: board, move schedule,
// end-rule clauses, and the condition language the clauses test (lines,
// shapes, disjoint counts, logical composition, board-full). All types are
// plain immutable values; normalization and canonicalization happen once at
// construction so structural equality is meaningful.

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gridplay {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Directions
// ---------------------------------------------------------------------------

// D1 steps down-right, D2 steps down-left.
enum class Dir : std::uint8_t { H = 0, V = 1, D1 = 2, D2 = 3 };

inline constexpr std::array<std::pair<int, int>, 4> kDirStep{{
    {0, 1},   // H
    {1, 0},   // V
    {1, 1},   // D1
    {1, -1},  // D2
}};

// Nonempty subset of the four line directions, packed as a 4-bit mask.
struct DirSet {
    std::uint8_t bits = 0;

    constexpr DirSet() = default;
    constexpr explicit DirSet(std::uint8_t mask) : bits(mask) {}
    constexpr DirSet(std::initializer_list<Dir> dirs) {
        for (Dir d : dirs) bits |= mask_of(d);
    }

    static constexpr DirSet all() { return DirSet{0b1111}; }
    static constexpr std::uint8_t mask_of(Dir d) {
        return static_cast<std::uint8_t>(1u << static_cast<int>(d));
    }

    constexpr bool has(Dir d) const { return (bits & mask_of(d)) != 0; }
    constexpr bool empty() const { return bits == 0; }
    constexpr int count() const {
        int n = 0;
        for (int i = 0; i < 4; ++i) n += (bits >> i) & 1;
        return n;
    }

    bool operator==(const DirSet&) const = default;
};

inline constexpr std::array<Dir, 4> kAllDirs{Dir::H, Dir::V, Dir::D1, Dir::D2};

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

// Relative cell offset used by shape footprints. May be negative.
struct Offset {
    int row = 0;
    int col = 0;
    auto operator<=>(const Offset&) const = default;
};

struct Condition;

// k own pieces in a row along one of the allowed directions.
struct LineCond {
    int k = 1;
    DirSet dirs = DirSet::all();
    bool operator==(const LineCond&) const = default;
};

// A fixed footprint of own pieces, optionally matched under quarter-turn
// rotations and/or mirror reflections. Offsets are stored canonically:
// sorted, deduplicated, translated so the lexicographically smallest
// offset sits at (0,0).
struct ShapeCond {
    std::vector<Offset> cells;
    bool rotations = false;
    bool reflections = false;
    bool operator==(const ShapeCond&) const = default;
};

// At least n pairwise cell-disjoint instances of the inner condition.
// `inner` always holds exactly one element (indirection for recursion).
struct CountCond {
    int n = 1;
    std::vector<Condition> inner;
    friend bool operator==(const CountCond&, const CountCond&);
};

struct AllCond {
    std::vector<Condition> children;
    friend bool operator==(const AllCond&, const AllCond&);
};

struct AnyCond {
    std::vector<Condition> children;
    friend bool operator==(const AnyCond&, const AnyCond&);
};

struct BoardFullCond {
    bool operator==(const BoardFullCond&) const = default;
};

struct Condition {
    std::variant<LineCond, ShapeCond, CountCond, AllCond, AnyCond, BoardFullCond> node;

    template <typename T>
    bool is() const { return std::holds_alternative<T>(node); }
    template <typename T>
    const T& as() const { return std::get<T>(node); }

    friend bool operator==(const Condition&, const Condition&);
};

inline bool operator==(const Condition& a, const Condition& b) { return a.node == b.node; }
inline bool operator==(const CountCond& a, const CountCond& b) {
    return a.n == b.n && a.inner == b.inner;
}
inline bool operator==(const AllCond& a, const AllCond& b) { return a.children == b.children; }
inline bool operator==(const AnyCond& a, const AnyCond& b) { return a.children == b.children; }

// Sort, dedupe, and translate the lexicographic minimum to (0,0).
inline void canonicalize_offsets(std::vector<Offset>& cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    if (cells.empty()) return;
    const Offset origin = cells.front();
    for (Offset& o : cells) {
        o.row -= origin.row;
        o.col -= origin.col;
    }
}

inline Condition line(int k, DirSet dirs = DirSet::all()) {
    return Condition{LineCond{k, dirs}};
}

inline Condition shape(std::vector<Offset> cells, bool rotations = false,
                       bool reflections = false) {
    canonicalize_offsets(cells);
    return Condition{ShapeCond{std::move(cells), rotations, reflections}};
}

inline Condition count_at_least(int n, Condition inner) {
    CountCond c;
    c.n = n;
    c.inner.push_back(std::move(inner));
    return Condition{std::move(c)};
}

inline Condition all_of(std::vector<Condition> children) {
    return Condition{AllCond{std::move(children)}};
}

inline Condition any_of(std::vector<Condition> children) {
    return Condition{AnyCond{std::move(children)}};
}

inline Condition board_full() { return Condition{BoardFullCond{}}; }

// Named shape footprints exposed as DSL sugar.

// (square n): full n-by-n block, n >= 1.
inline std::vector<Offset> square_offsets(int side) {
    std::vector<Offset> cells;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) cells.push_back({r, c});
    return cells;
}

// (plus n): center plus four equal arms, n = 4*arm + 1 cells total.
inline std::vector<Offset> plus_offsets(int total_cells) {
    const int arm = (total_cells - 1) / 4;
    std::vector<Offset> cells{{0, 0}};
    for (int i = 1; i <= arm; ++i) {
        cells.push_back({-i, 0});
        cells.push_back({i, 0});
        cells.push_back({0, -i});
        cells.push_back({0, i});
    }
    return cells;
}

// (ell n): a column of n-1 cells with one foot cell, n >= 3.
inline std::vector<Offset> ell_offsets(int total_cells) {
    std::vector<Offset> cells;
    for (int r = 0; r < total_cells - 1; ++r) cells.push_back({r, 0});
    cells.push_back({total_cells - 2, 1});
    return cells;
}

// All distinct orientation variants of a shape footprint (identity, plus
// quarter-turn rotations and/or mirror images when enabled), each in
// canonical offset form.
inline std::vector<std::vector<Offset>> shape_variants(const ShapeCond& shape) {
    auto rotate90 = [](const std::vector<Offset>& cells) {
        std::vector<Offset> out;
        out.reserve(cells.size());
        for (const Offset& o : cells) out.push_back({o.col, -o.row});
        return out;
    };
    auto mirror = [](const std::vector<Offset>& cells) {
        std::vector<Offset> out;
        out.reserve(cells.size());
        for (const Offset& o : cells) out.push_back({o.row, -o.col});
        return out;
    };

    std::vector<std::vector<Offset>> variants;
    auto add = [&variants](std::vector<Offset> cells) {
        canonicalize_offsets(cells);
        if (std::find(variants.begin(), variants.end(), cells) == variants.end())
            variants.push_back(std::move(cells));
    };

    std::vector<std::vector<Offset>> bases{shape.cells};
    if (shape.reflections) bases.push_back(mirror(shape.cells));
    for (const auto& base : bases) {
        std::vector<Offset> cur = base;
        add(cur);
        if (shape.rotations) {
            for (int i = 0; i < 3; ++i) {
                cur = rotate90(cur);
                add(cur);
            }
        }
    }
    return variants;
}

// ---------------------------------------------------------------------------
// Board, schedule, end rules
// ---------------------------------------------------------------------------

struct BoardSpec {
    int rows = 3;
    int cols = 3;
    int cell_count() const { return rows * cols; }
    bool operator==(const BoardSpec&) const = default;
};

// Who places a piece at each ply: a finite prefix, then a repeating cycle.
struct Schedule {
    std::vector<int> prefix;
    std::vector<int> cycle{1, 2};

    int mover_at(std::int64_t ply) const {
        if (ply < static_cast<std::int64_t>(prefix.size()))
            return prefix[static_cast<std::size_t>(ply)];
        const std::int64_t i = ply - static_cast<std::int64_t>(prefix.size());
        return cycle[static_cast<std::size_t>(i % static_cast<std::int64_t>(cycle.size()))];
    }

    bool operator==(const Schedule&) const = default;
};

enum class Effect : std::uint8_t { WinForMover, LoseForMover, WinForPlayer, Draw };

// One end rule. Clauses are evaluated in program order against the player
// who just moved; `only_mover` restricts which mover can trigger the clause.
struct EndClause {
    Effect effect = Effect::WinForMover;
    int beneficiary = 0;  // meaningful only for WinForPlayer
    std::optional<int> only_mover;
    Condition condition;
    bool operator==(const EndClause&) const = default;
};

struct GameSpec {
    std::string name;
    BoardSpec board;
    Schedule schedule;
    std::vector<EndClause> end_clauses;
    bool operator==(const GameSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Construction-time invariants and normalization
// ---------------------------------------------------------------------------

inline void check_player_id(int player, const char* where) {
    if (player != 1 && player != 2)
        throw Error(std::string(where) + ": player id must be 1 or 2, got " +
                    std::to_string(player));
}

inline void check_condition_invariants(const Condition& cond) {
    struct Visitor {
        void operator()(const LineCond& c) const {
            if (c.k < 1) throw Error("line: k must be >= 1, got " + std::to_string(c.k));
            if (c.dirs.empty()) throw Error("line: direction set must be nonempty");
        }
        void operator()(const ShapeCond& c) const {
            if (c.cells.empty()) throw Error("shape: offset set must be nonempty");
        }
        void operator()(const CountCond& c) const {
            if (c.n < 1) throw Error("count: n must be >= 1, got " + std::to_string(c.n));
            if (c.inner.size() != 1) throw Error("count: expects exactly one inner condition");
            check_condition_invariants(c.inner.front());
        }
        void operator()(const AllCond& c) const {
            if (c.children.empty()) throw Error("and: requires at least one condition");
            for (const Condition& child : c.children) check_condition_invariants(child);
        }
        void operator()(const AnyCond& c) const {
            if (c.children.empty()) throw Error("or: requires at least one condition");
            for (const Condition& child : c.children) check_condition_invariants(child);
        }
        void operator()(const BoardFullCond&) const {}
    };
    std::visit(Visitor{}, cond.node);
}

// Enforces hard invariants and appends the implicit board-full draw clause
// when the program declares no draw rule. Throws Error on violations.
inline GameSpec normalized(GameSpec spec) {
    if (spec.board.rows < 1)
        throw Error("board: rows must be >= 1, got " + std::to_string(spec.board.rows));
    if (spec.board.cols < 1)
        throw Error("board: cols must be >= 1, got " + std::to_string(spec.board.cols));
    if (spec.schedule.cycle.empty()) throw Error("order: cycle must be nonempty");
    for (int p : spec.schedule.prefix) check_player_id(p, "order prefix");
    for (int p : spec.schedule.cycle) check_player_id(p, "order cycle");

    bool has_draw = false;
    for (const EndClause& clause : spec.end_clauses) {
        if (clause.effect == Effect::WinForPlayer) check_player_id(clause.beneficiary, "win-for");
        if (clause.only_mover) check_player_id(*clause.only_mover, "by");
        check_condition_invariants(clause.condition);
        if (clause.effect == Effect::Draw) has_draw = true;
    }
    if (!has_draw) {
        EndClause draw;
        draw.effect = Effect::Draw;
        draw.condition = board_full();
        spec.end_clauses.push_back(std::move(draw));
    }
    return spec;
}

// Exchanges the two player roles everywhere they appear (schedule, clause
// scopes, named beneficiaries). Conditions are player-agnostic.
inline GameSpec swap_players(GameSpec spec) {
    auto flip = [](int p) { return p == 1 ? 2 : 1; };
    for (int& p : spec.schedule.prefix) p = flip(p);
    for (int& p : spec.schedule.cycle) p = flip(p);
    for (EndClause& clause : spec.end_clauses) {
        if (clause.only_mover) clause.only_mover = flip(*clause.only_mover);
        if (clause.effect == Effect::WinForPlayer) clause.beneficiary = flip(clause.beneficiary);
    }
    return spec;
}

}  // namespace gridplay
