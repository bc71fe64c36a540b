#pragma once

// Game execution: state representation, legal moves, transitions, terminal
// detection, and goal-progress computation. States are immutable values;
// apply_move returns a fresh state, so states can be fanned out across
// threads freely.

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gridplay/game.hpp"

namespace gridplay {

struct Coord {
    int row = 0;
    int col = 0;
    auto operator<=>(const Coord&) const = default;
};

enum class Outcome : std::uint8_t { P1Win, Draw, P2Win };

inline Outcome win_for(int player) { return player == 1 ? Outcome::P1Win : Outcome::P2Win; }
inline int other_player(int player) { return player == 1 ? 2 : 1; }

struct GameState {
    std::shared_ptr<const GameSpec> spec;
    std::vector<std::int8_t> cells;  // row-major; 0 empty, else owning player id
    int ply = 0;
    int mover = 1;
    std::optional<Outcome> terminal;  // status reached by the last applied move

    int rows() const { return spec->board.rows; }
    int cols() const { return spec->board.cols; }
    std::int8_t at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * cols() + col];
    }
};

namespace detail {

// Read-only board snapshot shared by the reference semantics below and the
// batched move evaluator.
struct BoardView {
    int rows = 0;
    int cols = 0;
    const std::int8_t* cells = nullptr;

    int cell_count() const { return rows * cols; }
    std::int8_t at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * cols + col];
    }
};

inline BoardView view_of(const GameState& state) {
    return BoardView{state.rows(), state.cols(), state.cells.data()};
}

// One straight line across the board, walked as cells[base + t*stride].
struct LineRef {
    int base = 0;
    int stride = 1;
    int len = 0;
};

// Enumerates every maximal line of the board in the given direction, in a
// fixed deterministic order.
template <typename Fn>
inline void for_each_line(int rows, int cols, Dir dir, Fn&& fn) {
    switch (dir) {
        case Dir::H:
            for (int r = 0; r < rows; ++r) fn(LineRef{r * cols, 1, cols});
            break;
        case Dir::V:
            for (int c = 0; c < cols; ++c) fn(LineRef{c, cols, rows});
            break;
        case Dir::D1:
            for (int c = 0; c < cols; ++c)
                fn(LineRef{c, cols + 1, std::min(rows, cols - c)});
            for (int r = 1; r < rows; ++r)
                fn(LineRef{r * cols, cols + 1, std::min(rows - r, cols)});
            break;
        case Dir::D2:
            for (int c = 0; c < cols; ++c)
                fn(LineRef{c, cols - 1, std::min(rows, c + 1)});
            for (int r = 1; r < rows; ++r)
                fn(LineRef{r * cols + cols - 1, cols - 1, std::min(rows - r, cols)});
            break;
    }
}

// True iff the line holds a run of >= k cells owned by `me`.
inline bool line_has_run(const std::int8_t* cells, const LineRef& line, std::int8_t me, int k) {
    int run = 0;
    int idx = line.base;
    for (int t = 0; t < line.len; ++t, idx += line.stride) {
        if (cells[idx] == me) {
            if (++run >= k) return true;
        } else {
            run = 0;
        }
    }
    return false;
}

// Goal progress along one line: the longest own run lying inside some
// opponent-free window of length k, divided by k; 1 once a run reaches k.
// A run in a segment shorter than k is dead (blocked by the opponent or the
// board edge) and contributes nothing.
inline double line_progress(const std::int8_t* cells, const LineRef& line, std::int8_t me,
                            std::int8_t opp, int k) {
    double best = 0.0;
    int idx = line.base;
    int t = 0;
    while (t < line.len) {
        // maximal opponent-free segment
        int seg_len = 0;
        int seg_max_run = 0;
        int run = 0;
        while (t < line.len && cells[idx] != opp) {
            if (cells[idx] == me) {
                if (++run > seg_max_run) seg_max_run = run;
            } else {
                run = 0;
            }
            ++seg_len;
            ++t;
            idx += line.stride;
        }
        if (seg_max_run >= k) return 1.0;
        if (seg_len >= k && seg_max_run > 0) {
            const double p = static_cast<double>(seg_max_run) / k;
            if (p > best) best = p;
        }
        while (t < line.len && cells[idx] == opp) {
            ++t;
            idx += line.stride;
        }
    }
    return best;
}

inline bool board_is_full(const BoardView& board) {
    const int n = board.cell_count();
    for (int i = 0; i < n; ++i)
        if (board.cells[i] == 0) return false;
    return true;
}

// --- shape matching -------------------------------------------------------

struct PlacedShape {
    // Anchor ranges and the variant's offsets, precomputed per board.
    std::vector<Offset> offsets;
    int row_lo = 0, row_hi = -1;  // inclusive anchor bounds
    int col_lo = 0, col_hi = -1;
};

inline std::vector<PlacedShape> placeable_variants(const ShapeCond& shape, int rows, int cols) {
    std::vector<PlacedShape> out;
    for (auto& variant : shape_variants(shape)) {
        int rmax = 0, cmin = 0, cmax = 0;
        for (const Offset& o : variant) {
            rmax = std::max(rmax, o.row);  // canonical form has min row 0
            cmin = std::min(cmin, o.col);
            cmax = std::max(cmax, o.col);
        }
        PlacedShape placed;
        placed.offsets = std::move(variant);
        placed.row_lo = 0;
        placed.row_hi = rows - 1 - rmax;
        placed.col_lo = -cmin;
        placed.col_hi = cols - 1 - cmax;
        if (placed.row_hi >= placed.row_lo && placed.col_hi >= placed.col_lo)
            out.push_back(std::move(placed));
    }
    return out;
}

// --- disjoint-instance machinery for CountAtLeast --------------------------

using CellMask = std::vector<std::uint64_t>;

inline CellMask empty_mask(int cell_count) {
    return CellMask(static_cast<std::size_t>(cell_count + 63) / 64, 0);
}
inline void mask_set(CellMask& mask, int idx) { mask[idx >> 6] |= 1ULL << (idx & 63); }
inline bool masks_intersect(const CellMask& a, const CellMask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i]) return true;
    return false;
}
inline void mask_or(CellMask& a, const CellMask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

inline bool check_condition_view(const BoardView& board, int player, const Condition& cond);
inline double condition_progress_view(const BoardView& board, int player, const Condition& cond);

// Every minimal cell set witnessing the condition for `player`, in a fixed
// deterministic order. Witness sets drive the pairwise-disjointness
// semantics of CountAtLeast.
inline void collect_witnesses(const BoardView& board, int player, const Condition& cond,
                              std::vector<CellMask>& out) {
    const std::int8_t me = static_cast<std::int8_t>(player);
    struct Visitor {
        const BoardView& board;
        std::int8_t me;
        int player;
        std::vector<CellMask>& out;

        void operator()(const LineCond& c) const {
            for (Dir dir : kAllDirs) {
                if (!c.dirs.has(dir)) continue;
                for_each_line(board.rows, board.cols, dir, [&](const LineRef& line) {
                    if (line.len < c.k) return;
                    int run = 0;
                    int idx = line.base;
                    for (int t = 0; t < line.len; ++t, idx += line.stride) {
                        run = board.cells[idx] == me ? run + 1 : 0;
                        if (run >= c.k) {
                            CellMask mask = empty_mask(board.cell_count());
                            int w = idx;
                            for (int j = 0; j < c.k; ++j, w -= line.stride) mask_set(mask, w);
                            out.push_back(std::move(mask));
                        }
                    }
                });
            }
        }
        void operator()(const ShapeCond& c) const {
            for (const PlacedShape& placed : placeable_variants(c, board.rows, board.cols)) {
                for (int ar = placed.row_lo; ar <= placed.row_hi; ++ar) {
                    for (int ac = placed.col_lo; ac <= placed.col_hi; ++ac) {
                        bool all_own = true;
                        for (const Offset& o : placed.offsets) {
                            if (board.at(ar + o.row, ac + o.col) != me) {
                                all_own = false;
                                break;
                            }
                        }
                        if (!all_own) continue;
                        CellMask mask = empty_mask(board.cell_count());
                        for (const Offset& o : placed.offsets)
                            mask_set(mask, (ar + o.row) * board.cols + (ac + o.col));
                        out.push_back(std::move(mask));
                    }
                }
            }
        }
        void operator()(const CountCond& c) const {
            // unions of c.n pairwise-disjoint inner witnesses
            std::vector<CellMask> inner;
            collect_witnesses(board, player, c.inner.front(), inner);
            std::vector<std::size_t> chosen;
            CellMask used = empty_mask(board.cell_count());
            combine(inner, 0, chosen, used, c.n);
        }
        void combine(const std::vector<CellMask>& inner, std::size_t from,
                     std::vector<std::size_t>& chosen, CellMask& used, int want) const {
            if (static_cast<int>(chosen.size()) == want) {
                out.push_back(used);
                return;
            }
            for (std::size_t i = from; i < inner.size(); ++i) {
                if (masks_intersect(used, inner[i])) continue;
                CellMask next = used;
                mask_or(next, inner[i]);
                chosen.push_back(i);
                combine(inner, i + 1, chosen, next, want);
                chosen.pop_back();
            }
        }
        void operator()(const AllCond& c) const {
            // cross-product unions over the children's witnesses
            std::vector<std::vector<CellMask>> per_child;
            for (const Condition& child : c.children) {
                per_child.emplace_back();
                collect_witnesses(board, player, child, per_child.back());
                if (per_child.back().empty()) return;
            }
            CellMask acc = empty_mask(board.cell_count());
            cross(per_child, 0, acc);
        }
        void cross(const std::vector<std::vector<CellMask>>& per_child, std::size_t depth,
                   const CellMask& acc) const {
            if (depth == per_child.size()) {
                out.push_back(acc);
                return;
            }
            for (const CellMask& w : per_child[depth]) {
                CellMask next = acc;
                mask_or(next, w);
                cross(per_child, depth + 1, next);
            }
        }
        void operator()(const AnyCond& c) const {
            for (const Condition& child : c.children) collect_witnesses(board, player, child, out);
        }
        void operator()(const BoardFullCond&) const {
            if (!board_is_full(board)) return;
            CellMask mask = empty_mask(board.cell_count());
            for (int i = 0; i < board.cell_count(); ++i) mask_set(mask, i);
            out.push_back(std::move(mask));
        }
    };
    std::visit(Visitor{board, me, player, out}, cond.node);
}

// Largest number of pairwise-disjoint witnesses, capped at `target`. When
// `chosen_out` is given it receives the first maximal selection found (in
// deterministic order).
inline int max_disjoint(const std::vector<CellMask>& witnesses, int target,
                        std::vector<std::size_t>* chosen_out = nullptr) {
    if (target <= 0 || witnesses.empty()) return 0;
    int best = 0;
    std::vector<std::size_t> current, best_set;
    CellMask used = witnesses.front();  // sized like any witness
    std::fill(used.begin(), used.end(), 0);

    struct Searcher {
        const std::vector<CellMask>& wits;
        int target;
        int& best;
        std::vector<std::size_t>& current;
        std::vector<std::size_t>& best_set;

        bool dfs(std::size_t i, CellMask& used) {
            if (static_cast<int>(current.size()) > best) {
                best = static_cast<int>(current.size());
                best_set = current;
                if (best >= target) return true;
            }
            if (i >= wits.size()) return false;
            if (static_cast<int>(current.size() + (wits.size() - i)) <= best) return false;
            if (!masks_intersect(used, wits[i])) {
                CellMask next = used;
                mask_or(next, wits[i]);
                current.push_back(i);
                if (dfs(i + 1, next)) return true;
                current.pop_back();
            }
            return dfs(i + 1, used);
        }
    };
    Searcher{witnesses, target, best, current, best_set}.dfs(0, used);
    if (chosen_out) *chosen_out = best_set;
    return best;
}

inline bool check_condition_view(const BoardView& board, int player, const Condition& cond) {
    const std::int8_t me = static_cast<std::int8_t>(player);
    struct Visitor {
        const BoardView& board;
        std::int8_t me;
        int player;

        bool operator()(const LineCond& c) const {
            for (Dir dir : kAllDirs) {
                if (!c.dirs.has(dir)) continue;
                bool found = false;
                for_each_line(board.rows, board.cols, dir, [&](const LineRef& line) {
                    if (!found && line.len >= c.k && line_has_run(board.cells, line, me, c.k))
                        found = true;
                });
                if (found) return true;
            }
            return false;
        }
        bool operator()(const ShapeCond& c) const {
            for (const PlacedShape& placed : placeable_variants(c, board.rows, board.cols)) {
                for (int ar = placed.row_lo; ar <= placed.row_hi; ++ar) {
                    for (int ac = placed.col_lo; ac <= placed.col_hi; ++ac) {
                        bool all_own = true;
                        for (const Offset& o : placed.offsets) {
                            if (board.at(ar + o.row, ac + o.col) != me) {
                                all_own = false;
                                break;
                            }
                        }
                        if (all_own) return true;
                    }
                }
            }
            return false;
        }
        bool operator()(const CountCond& c) const {
            std::vector<CellMask> witnesses;
            collect_witnesses(board, player, c.inner.front(), witnesses);
            return max_disjoint(witnesses, c.n) >= c.n;
        }
        bool operator()(const AllCond& c) const {
            for (const Condition& child : c.children)
                if (!check_condition_view(board, player, child)) return false;
            return true;
        }
        bool operator()(const AnyCond& c) const {
            for (const Condition& child : c.children)
                if (check_condition_view(board, player, child)) return true;
            return false;
        }
        bool operator()(const BoardFullCond&) const { return board_is_full(board); }
    };
    return std::visit(Visitor{board, me, player}, cond.node);
}

inline double condition_progress_view(const BoardView& board, int player, const Condition& cond) {
    const std::int8_t me = static_cast<std::int8_t>(player);
    const std::int8_t opp = static_cast<std::int8_t>(other_player(player));
    struct Visitor {
        const BoardView& board;
        std::int8_t me;
        std::int8_t opp;
        int player;

        double operator()(const LineCond& c) const {
            double best = 0.0;
            for (Dir dir : kAllDirs) {
                if (!c.dirs.has(dir)) continue;
                for_each_line(board.rows, board.cols, dir, [&](const LineRef& line) {
                    if (best < 1.0) {
                        const double p = line_progress(board.cells, line, me, opp, c.k);
                        if (p > best) best = p;
                    }
                });
                if (best >= 1.0) return 1.0;
            }
            return best;
        }
        double operator()(const ShapeCond& c) const {
            double best = 0.0;
            for (const PlacedShape& placed : placeable_variants(c, board.rows, board.cols)) {
                const double size = static_cast<double>(placed.offsets.size());
                for (int ar = placed.row_lo; ar <= placed.row_hi; ++ar) {
                    for (int ac = placed.col_lo; ac <= placed.col_hi; ++ac) {
                        int own = 0;
                        bool blocked = false;
                        for (const Offset& o : placed.offsets) {
                            const std::int8_t v = board.at(ar + o.row, ac + o.col);
                            if (v == opp) {
                                blocked = true;
                                break;
                            }
                            if (v == me) ++own;
                        }
                        if (blocked) continue;
                        const double p = own / size;
                        if (p > best) best = p;
                        if (best >= 1.0) return 1.0;
                    }
                }
            }
            return best;
        }
        double operator()(const CountCond& c) const {
            std::vector<CellMask> witnesses;
            collect_witnesses(board, player, c.inner.front(), witnesses);
            std::vector<std::size_t> chosen;
            const int completed = max_disjoint(witnesses, c.n, &chosen);
            if (completed >= c.n) return 1.0;
            // Progress of one additional instance, on the board with the
            // chosen instances' cells blocked off.
            std::vector<std::int8_t> masked(board.cells, board.cells + board.cell_count());
            for (std::size_t wi : chosen) {
                const CellMask& mask = witnesses[wi];
                for (int i = 0; i < board.cell_count(); ++i)
                    if (mask[i >> 6] & (1ULL << (i & 63))) masked[static_cast<std::size_t>(i)] = opp;
            }
            const BoardView masked_view{board.rows, board.cols, masked.data()};
            const double partial =
                condition_progress_view(masked_view, player, c.inner.front());
            return std::min(1.0, (completed + partial) / c.n);
        }
        double operator()(const AllCond& c) const {
            double sum = 0.0;
            for (const Condition& child : c.children)
                sum += condition_progress_view(board, player, child);
            return sum / static_cast<double>(c.children.size());
        }
        double operator()(const AnyCond& c) const {
            double best = 0.0;
            for (const Condition& child : c.children)
                best = std::max(best, condition_progress_view(board, player, child));
            return best;
        }
        double operator()(const BoardFullCond&) const {
            int filled = 0;
            const int n = board.cell_count();
            for (int i = 0; i < n; ++i)
                if (board.cells[i] != 0) ++filled;
            return static_cast<double>(filled) / n;
        }
    };
    return std::visit(Visitor{board, me, opp, player}, cond.node);
}

// End rules evaluated against the player who just moved; first firing clause
// decides. A full board with no firing clause is a draw, since no legal
// continuation exists.
inline std::optional<Outcome> terminal_status_view(const BoardView& board, int ply,
                                                   const GameSpec& spec) {
    if (ply == 0) return std::nullopt;
    const int prev_mover = spec.schedule.mover_at(ply - 1);
    for (const EndClause& clause : spec.end_clauses) {
        if (clause.only_mover && *clause.only_mover != prev_mover) continue;
        if (!check_condition_view(board, prev_mover, clause.condition)) continue;
        switch (clause.effect) {
            case Effect::WinForMover: return win_for(prev_mover);
            case Effect::LoseForMover: return win_for(other_player(prev_mover));
            case Effect::WinForPlayer: return win_for(clause.beneficiary);
            case Effect::Draw: return Outcome::Draw;
        }
    }
    if (board_is_full(board)) return Outcome::Draw;
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

inline GameState new_state(std::shared_ptr<const GameSpec> spec) {
    GameState state;
    state.spec = std::move(spec);
    state.cells.assign(static_cast<std::size_t>(state.spec->board.cell_count()), 0);
    state.ply = 0;
    state.mover = state.spec->schedule.mover_at(0);
    return state;
}

inline GameState new_state(const GameSpec& spec) {
    return new_state(std::make_shared<const GameSpec>(spec));
}

inline std::optional<Outcome> terminal_status(const GameState& state, const GameSpec& spec) {
    return detail::terminal_status_view(detail::view_of(state), state.ply, spec);
}

inline std::vector<Coord> legal_moves(const GameState& state) {
    if (state.terminal)
        throw Error("legal_moves: state is terminal");
    std::vector<Coord> moves;
    moves.reserve(state.cells.size() - static_cast<std::size_t>(state.ply));
    for (int r = 0; r < state.rows(); ++r)
        for (int c = 0; c < state.cols(); ++c)
            if (state.at(r, c) == 0) moves.push_back({r, c});
    return moves;
}

inline GameState apply_move(const GameState& state, Coord cell) {
    if (state.terminal) throw Error("apply_move: state is terminal");
    if (cell.row < 0 || cell.row >= state.rows() || cell.col < 0 || cell.col >= state.cols())
        throw Error("apply_move: cell (" + std::to_string(cell.row) + "," +
                    std::to_string(cell.col) + ") is outside the board");
    if (state.at(cell.row, cell.col) != 0)
        throw Error("apply_move: cell (" + std::to_string(cell.row) + "," +
                    std::to_string(cell.col) + ") is occupied");
    GameState next = state;
    next.cells[static_cast<std::size_t>(cell.row) * state.cols() + cell.col] =
        static_cast<std::int8_t>(state.mover);
    next.ply = state.ply + 1;
    next.mover = state.spec->schedule.mover_at(next.ply);
    next.terminal = terminal_status(next, *state.spec);
    return next;
}

inline bool check_condition(const GameState& state, int player, const Condition& cond) {
    return detail::check_condition_view(detail::view_of(state), player, cond);
}

inline double condition_progress(const GameState& state, int player, const Condition& cond) {
    return detail::condition_progress_view(detail::view_of(state), player, cond);
}

}  // namespace gridplay
