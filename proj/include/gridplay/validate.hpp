#pragma once

// Non-throwing diagnostics for game specs: hard invariant violations are
// reported as errors, conditions that can never fire on the declared board
// and schedule as warnings. Also decides membership in the restricted
// grammar (plain line-completion games with win/lose effects and arbitrary
// move schedules).

#include <string>
#include <vector>

#include "gridplay/engine.hpp"

namespace gridplay {

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
};

namespace detail {

inline void collect_condition_errors(const Condition& cond, std::vector<Diagnostic>& out) {
    struct Visitor {
        std::vector<Diagnostic>& out;
        void operator()(const LineCond& c) const {
            if (c.k < 1)
                out.push_back({Severity::Error, "line length must be >= 1"});
            if (c.dirs.empty())
                out.push_back({Severity::Error, "line direction set must be nonempty"});
        }
        void operator()(const ShapeCond& c) const {
            if (c.cells.empty())
                out.push_back({Severity::Error, "shape offset set must be nonempty"});
        }
        void operator()(const CountCond& c) const {
            if (c.n < 1) out.push_back({Severity::Error, "count n must be >= 1"});
            if (c.inner.size() != 1)
                out.push_back({Severity::Error, "count must hold exactly one inner condition"});
            for (const Condition& inner : c.inner) collect_condition_errors(inner, out);
        }
        void operator()(const AllCond& c) const {
            if (c.children.empty())
                out.push_back({Severity::Error, "'and' requires at least one condition"});
            for (const Condition& child : c.children) collect_condition_errors(child, out);
        }
        void operator()(const AnyCond& c) const {
            if (c.children.empty())
                out.push_back({Severity::Error, "'or' requires at least one condition"});
            for (const Condition& child : c.children) collect_condition_errors(child, out);
        }
        void operator()(const BoardFullCond&) const {}
    };
    std::visit(Visitor{out}, cond.node);
}

// Fewest own cells any single witness of the condition can occupy
// (a lower bound for composite conditions).
inline int min_witness_cells(const Condition& cond) {
    struct Visitor {
        int operator()(const LineCond& c) const { return c.k; }
        int operator()(const ShapeCond& c) const { return static_cast<int>(c.cells.size()); }
        int operator()(const CountCond& c) const {
            return c.inner.empty() ? c.n : c.n * min_witness_cells(c.inner.front());
        }
        int operator()(const AllCond& c) const {
            int best = 0;
            for (const Condition& child : c.children)
                best = std::max(best, min_witness_cells(child));
            return best;
        }
        int operator()(const AnyCond& c) const {
            int best = INT32_MAX;
            for (const Condition& child : c.children)
                best = std::min(best, min_witness_cells(child));
            return c.children.empty() ? 0 : best;
        }
        int operator()(const BoardFullCond&) const { return 0; }
    };
    return std::visit(Visitor{}, cond.node);
}

// Could the condition ever hold on this board, ignoring the opponent?
// Exact for lines, shapes, and counts over them; a sound necessary check
// for logical composites.
inline bool geometrically_satisfiable(const Condition& cond, const BoardSpec& board) {
    struct Visitor {
        const BoardSpec& board;
        bool operator()(const LineCond& c) const {
            if (c.dirs.has(Dir::H) && board.cols >= c.k) return true;
            if (c.dirs.has(Dir::V) && board.rows >= c.k) return true;
            if ((c.dirs.has(Dir::D1) || c.dirs.has(Dir::D2)) && board.rows >= c.k &&
                board.cols >= c.k)
                return true;
            return false;
        }
        bool operator()(const ShapeCond& c) const {
            return !placeable_variants(c, board.rows, board.cols).empty();
        }
        bool operator()(const CountCond& c) const {
            if (c.inner.empty()) return false;
            const Condition& inner = c.inner.front();
            // enumerate placements of the inner pattern on an empty board
            std::vector<CellMask> placements;
            if (inner.is<LineCond>()) {
                const LineCond& lc = inner.as<LineCond>();
                for (Dir dir : kAllDirs) {
                    if (!lc.dirs.has(dir)) continue;
                    for_each_line(board.rows, board.cols, dir, [&](const LineRef& line) {
                        for (int start = 0; start + lc.k <= line.len; ++start) {
                            CellMask mask = empty_mask(board.cell_count());
                            int idx = line.base + start * line.stride;
                            for (int j = 0; j < lc.k; ++j, idx += line.stride)
                                mask_set(mask, idx);
                            placements.push_back(std::move(mask));
                        }
                    });
                }
            } else if (inner.is<ShapeCond>()) {
                for (const PlacedShape& placed :
                     placeable_variants(inner.as<ShapeCond>(), board.rows, board.cols)) {
                    for (int ar = placed.row_lo; ar <= placed.row_hi; ++ar) {
                        for (int ac = placed.col_lo; ac <= placed.col_hi; ++ac) {
                            CellMask mask = empty_mask(board.cell_count());
                            for (const Offset& o : placed.offsets)
                                mask_set(mask, (ar + o.row) * board.cols + (ac + o.col));
                            placements.push_back(std::move(mask));
                        }
                    }
                }
            } else {
                return geometrically_satisfiable(inner, board);
            }
            return max_disjoint(placements, c.n) >= c.n;
        }
        bool operator()(const AllCond& c) const {
            for (const Condition& child : c.children)
                if (!geometrically_satisfiable(child, board)) return false;
            return true;
        }
        bool operator()(const AnyCond& c) const {
            for (const Condition& child : c.children)
                if (geometrically_satisfiable(child, board)) return true;
            return false;
        }
        bool operator()(const BoardFullCond&) const { return true; }
    };
    return std::visit(Visitor{board}, cond.node);
}

// Cells player p owns once the board has filled under the schedule.
inline int cells_owned_at_full(const Schedule& schedule, int player, int total) {
    int owned = 0;
    for (int ply = 0; ply < total; ++ply)
        if (schedule.mover_at(ply) == player) ++owned;
    return owned;
}

}  // namespace detail

inline std::vector<Diagnostic> validate(const GameSpec& spec) {
    std::vector<Diagnostic> diags;
    if (spec.board.rows < 1) diags.push_back({Severity::Error, "board rows must be >= 1"});
    if (spec.board.cols < 1) diags.push_back({Severity::Error, "board cols must be >= 1"});
    if (spec.schedule.cycle.empty())
        diags.push_back({Severity::Error, "schedule cycle must be nonempty"});
    for (int p : spec.schedule.prefix)
        if (p != 1 && p != 2)
            diags.push_back({Severity::Error, "schedule prefix player must be 1 or 2"});
    for (int p : spec.schedule.cycle)
        if (p != 1 && p != 2)
            diags.push_back({Severity::Error, "schedule cycle player must be 1 or 2"});
    if (spec.end_clauses.empty())
        diags.push_back({Severity::Error, "game must declare at least one end clause"});

    for (std::size_t i = 0; i < spec.end_clauses.size(); ++i) {
        const EndClause& clause = spec.end_clauses[i];
        const std::string where = "end clause " + std::to_string(i + 1);
        if (clause.effect == Effect::WinForPlayer &&
            (clause.beneficiary != 1 && clause.beneficiary != 2))
            diags.push_back({Severity::Error, where + ": win-for player must be 1 or 2"});
        if (clause.only_mover && *clause.only_mover != 1 && *clause.only_mover != 2)
            diags.push_back({Severity::Error, where + ": by player must be 1 or 2"});
        detail::collect_condition_errors(clause.condition, diags);
    }
    if (!diags.empty()) return diags;  // reachability checks assume sane structure

    const int total = spec.board.cell_count();
    for (std::size_t i = 0; i < spec.end_clauses.size(); ++i) {
        const EndClause& clause = spec.end_clauses[i];
        const std::string where = "end clause " + std::to_string(i + 1);
        if (!detail::geometrically_satisfiable(clause.condition, spec.board)) {
            diags.push_back({Severity::Warning, where + ": condition unsatisfiable on board"});
            continue;
        }
        int budget = 0;
        for (int player : {1, 2}) {
            if (clause.only_mover && *clause.only_mover != player) continue;
            budget = std::max(budget,
                              detail::cells_owned_at_full(spec.schedule, player, total));
        }
        if (detail::min_witness_cells(clause.condition) > budget)
            diags.push_back({Severity::Warning,
                             where + ": condition needs more cells than any eligible player "
                                     "can own under the schedule"});
    }
    return diags;
}

// True iff the spec stays within the sub-language spanning the original
// stimulus set: line conditions only, win/lose/draw effects with optional
// per-player scoping, any prefix-plus-cycle schedule. Shape, count, and
// logical composition nodes take a game outside the restricted grammar.
inline bool in_restricted_grammar(const GameSpec& spec) {
    for (const EndClause& clause : spec.end_clauses) {
        if (clause.effect == Effect::WinForPlayer) return false;
        if (clause.effect == Effect::Draw) {
            if (!clause.condition.is<BoardFullCond>() && !clause.condition.is<LineCond>())
                return false;
        } else if (!clause.condition.is<LineCond>()) {
            return false;
        }
    }
    return true;
}

}  // namespace gridplay
