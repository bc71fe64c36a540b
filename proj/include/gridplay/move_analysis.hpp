#pragma once

// Batched per-ply move analysis used by the heuristic agent and the playout
// harness. For games whose end conditions are all plain lines (plus
// board-full clauses) the evaluator works incrementally: a placement can
// only improve the mover's own line progress through the placed cell, and
// can only degrade the opponent's progress on the four lines crossing it,
// so candidate moves are scored from per-line tables instead of full board
// rescans. Everything else falls back to the reference semantics in
// engine.hpp; both paths produce bit-identical values for the same state.

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "gridplay/engine.hpp"

namespace gridplay::detail {

class Workspace {
public:
    explicit Workspace(std::shared_ptr<const GameSpec> spec) : spec_(std::move(spec)) {
        const int rows = spec_->board.rows;
        const int cols = spec_->board.cols;
        cell_count_ = rows * cols;
        for (Dir dir : kAllDirs) {
            auto& lines = lines_[static_cast<int>(dir)];
            auto& cell_line = cell_line_[static_cast<int>(dir)];
            cell_line.assign(static_cast<std::size_t>(cell_count_), -1);
            for_each_line(rows, cols, dir, [&](const LineRef& line) {
                const int id = static_cast<int>(lines.size());
                lines.push_back(line);
                int idx = line.base;
                for (int t = 0; t < line.len; ++t, idx += line.stride)
                    cell_line[static_cast<std::size_t>(idx)] = id;
            });
        }
        compile_clauses();
        reset();
    }

    void reset() {
        cells_.assign(static_cast<std::size_t>(cell_count_), 0);
        ply_ = 0;
        mover_ = spec_->schedule.mover_at(0);
        terminal_.reset();
        legal_.clear();
        for (int i = 0; i < cell_count_; ++i) legal_.push_back(i);
    }

    // Adopts an externally built position (used by the public agent API).
    void load(const GameState& state) {
        cells_ = state.cells;
        ply_ = state.ply;
        mover_ = state.mover;
        terminal_ = state.terminal;
        legal_.clear();
        for (int i = 0; i < cell_count_; ++i)
            if (cells_[static_cast<std::size_t>(i)] == 0) legal_.push_back(i);
    }

    const GameSpec& spec() const { return *spec_; }
    int rows() const { return spec_->board.rows; }
    int cols() const { return spec_->board.cols; }
    int cell_count() const { return cell_count_; }
    int ply() const { return ply_; }
    int mover() const { return mover_; }
    const std::optional<Outcome>& terminal() const { return terminal_; }
    const std::vector<int>& legal_cells() const { return legal_; }
    Coord coord_of(int cell) const { return Coord{cell / cols(), cell % cols()}; }

    void apply(int cell) {
        cells_[static_cast<std::size_t>(cell)] = static_cast<std::int8_t>(mover_);
        ++ply_;
        mover_ = spec_->schedule.mover_at(ply_);
        const BoardView board{rows(), cols(), cells_.data()};
        terminal_ = terminal_status_view(board, ply_, *spec_);
        const auto it = std::lower_bound(legal_.begin(), legal_.end(), cell);
        legal_.erase(it);
    }

    // Heuristic value of every legal move for the current mover, aligned
    // with legal_cells(). For move m:
    //   w_win  * [m ends the game with the mover winning]
    // + w_lose * [m ends the game with the mover losing]
    // + w_self * change in the mover's directed goal progress
    // + w_block* reduction of the opponent's directed goal progress
    // where directed progress is (best win-condition progress) minus (best
    // progress toward conditions that would make that player lose).
    void move_values(double w_win, double w_lose, double w_self, double w_block,
                     std::vector<double>& out) {
        out.resize(legal_.size());
        if (fast_)
            move_values_fast(w_win, w_lose, w_self, w_block, out);
        else
            move_values_general(w_win, w_lose, w_self, w_block, out);
    }

private:
    struct ClauseInfo {
        Effect effect = Effect::Draw;
        int beneficiary = 0;
        std::optional<int> only_mover;
        const Condition* cond = nullptr;
        bool is_line = false;
        bool is_full = false;
        LineCond line;
    };

    struct GoalCond {
        const Condition* cond = nullptr;
        bool losing = false;
        bool is_line = false;
        bool is_full = false;
        LineCond line;
    };

    void compile_clauses() {
        fast_ = true;
        for (const EndClause& clause : spec_->end_clauses) {
            ClauseInfo info;
            info.effect = clause.effect;
            info.beneficiary = clause.beneficiary;
            info.only_mover = clause.only_mover;
            info.cond = &clause.condition;
            if (clause.condition.is<LineCond>()) {
                info.is_line = true;
                info.line = clause.condition.as<LineCond>();
            } else if (clause.condition.is<BoardFullCond>()) {
                info.is_full = true;
            } else {
                fast_ = false;
            }
            clauses_.push_back(info);

            if (clause.effect == Effect::Draw) continue;
            for (int player = 1; player <= 2; ++player) {
                if (clause.only_mover && *clause.only_mover != player) continue;
                GoalCond goal;
                goal.cond = info.cond;
                goal.is_line = info.is_line;
                goal.is_full = info.is_full;
                goal.line = info.line;
                goal.losing = clause.effect == Effect::LoseForMover ||
                              (clause.effect == Effect::WinForPlayer &&
                               clause.beneficiary != player);
                goals_[player].push_back(goal);
            }
        }
    }

    Outcome outcome_of(const ClauseInfo& clause, int mover) const {
        switch (clause.effect) {
            case Effect::WinForMover: return win_for(mover);
            case Effect::LoseForMover: return win_for(other_player(mover));
            case Effect::WinForPlayer: return win_for(clause.beneficiary);
            case Effect::Draw: return Outcome::Draw;
        }
        return Outcome::Draw;
    }

    // --- fast path ---------------------------------------------------------

    // Full-board line progress for `player`, restricted to cond.dirs.
    double full_line_progress(const LineCond& cond, int player) const {
        const std::int8_t me = static_cast<std::int8_t>(player);
        const std::int8_t opp = static_cast<std::int8_t>(other_player(player));
        double best = 0.0;
        for (Dir dir : kAllDirs) {
            if (!cond.dirs.has(dir)) continue;
            for (const LineRef& line : lines_[static_cast<int>(dir)]) {
                const double p = line_progress(cells_.data(), line, me, opp, cond.k);
                if (p > best) best = p;
                if (best >= 1.0) return 1.0;
            }
        }
        return best;
    }

    bool line_cond_true(const LineCond& cond, int player) const {
        const std::int8_t me = static_cast<std::int8_t>(player);
        for (Dir dir : kAllDirs) {
            if (!cond.dirs.has(dir)) continue;
            for (const LineRef& line : lines_[static_cast<int>(dir)])
                if (line.len >= cond.k && line_has_run(cells_.data(), line, me, cond.k))
                    return true;
        }
        return false;
    }

    // Run through `cell` after the mover's piece is placed there: length of
    // the contiguous own run containing the cell, per direction.
    int run_through(int cell, Dir dir, std::int8_t me) const {
        const auto [dr, dc] = kDirStep[static_cast<int>(dir)];
        const int r0 = cell / cols(), c0 = cell % cols();
        int run = 1;
        for (int r = r0 + dr, c = c0 + dc;
             r >= 0 && r < rows() && c >= 0 && c < cols() && at(r, c) == me; r += dr, c += dc)
            ++run;
        for (int r = r0 - dr, c = c0 - dc;
             r >= 0 && r < rows() && c >= 0 && c < cols() && at(r, c) == me; r -= dr, c -= dc)
            ++run;
        return run;
    }

    // Progress of the (possibly merged) own run through `cell`, assuming the
    // mover's piece sits there. Scans outward at most k cells per side.
    double local_line_progress(int cell, const LineCond& cond, std::int8_t me,
                               std::int8_t opp) const {
        double best = 0.0;
        const int r0 = cell / cols(), c0 = cell % cols();
        for (Dir dir : kAllDirs) {
            if (!cond.dirs.has(dir)) continue;
            const auto [dr, dc] = kDirStep[static_cast<int>(dir)];
            int run = 1;
            int r = r0 + dr, c = c0 + dc;
            while (r >= 0 && r < rows() && c >= 0 && c < cols() && at(r, c) == me) {
                ++run;
                r += dr;
                c += dc;
            }
            int free_fwd = 0;
            while (r >= 0 && r < rows() && c >= 0 && c < cols() && at(r, c) != opp &&
                   free_fwd < cond.k) {
                ++free_fwd;
                r += dr;
                c += dc;
            }
            r = r0 - dr;
            c = c0 - dc;
            while (r >= 0 && r < rows() && c >= 0 && c < cols() && at(r, c) == me) {
                ++run;
                r -= dr;
                c -= dc;
            }
            int free_back = 0;
            while (r >= 0 && r < rows() && c >= 0 && c < cols() && at(r, c) != opp &&
                   free_back < cond.k) {
                ++free_back;
                r -= dr;
                c -= dc;
            }
            if (run >= cond.k) return 1.0;
            if (run + free_fwd + free_back >= cond.k) {
                const double p = static_cast<double>(run) / cond.k;
                if (p > best) best = p;
            }
        }
        return best;
    }

    bool completes_line(int cell, const LineCond& cond, std::int8_t me) const {
        for (Dir dir : kAllDirs) {
            if (!cond.dirs.has(dir)) continue;
            if (run_through(cell, dir, me) >= cond.k) return true;
        }
        return false;
    }

    void move_values_fast(double w_win, double w_lose, double w_self, double w_block,
                          std::vector<double>& out) {
        const int me = mover_;
        const int op = other_player(me);
        const std::int8_t me_sign = static_cast<std::int8_t>(me);
        const std::int8_t op_sign = static_cast<std::int8_t>(op);
        const double full_before = static_cast<double>(ply_) / cell_count_;
        const double full_after = static_cast<double>(ply_ + 1) / cell_count_;
        const bool fills_board = ply_ + 1 == cell_count_;

        // Which clauses already hold for the mover (they fire on any move).
        pre_true_.assign(clauses_.size(), 0);
        for (std::size_t i = 0; i < clauses_.size(); ++i) {
            const ClauseInfo& clause = clauses_[i];
            if (clause.only_mover && *clause.only_mover != me) continue;
            if (clause.is_line && line_cond_true(clause.line, me)) pre_true_[i] = 1;
        }

        // Mover-side before aggregates. Line conditions can only improve
        // through the placed cell, so per-move updates are local.
        double w_before_m = 0.0, l_before_m = 0.0;       // line conds only
        double w_full_m = -1.0, l_full_m = -1.0;          // board-full goal conds
        for (const GoalCond& goal : goals_[me]) {
            if (goal.is_line) {
                const double p = full_line_progress(goal.line, me);
                (goal.losing ? l_before_m : w_before_m) =
                    std::max(goal.losing ? l_before_m : w_before_m, p);
            } else {
                (goal.losing ? l_full_m : w_full_m) = 1.0;  // marker: cond present
            }
        }
        const double before_self = (std::max(w_before_m, w_full_m >= 0 ? full_before : 0.0)) -
                                   (std::max(l_before_m, l_full_m >= 0 ? full_before : 0.0));

        // Opponent-side per-line tables: the placement can only affect the
        // four lines through the placed cell.
        opp_tables_.clear();
        double w_before_o = 0.0, l_before_o = 0.0;
        double w_full_o = -1.0, l_full_o = -1.0;
        for (const GoalCond& goal : goals_[op]) {
            if (!goal.is_line) {
                (goal.losing ? l_full_o : w_full_o) = 1.0;
                continue;
            }
            OppTable table;
            table.k = goal.line.k;
            table.losing = goal.losing;
            for (Dir dir : kAllDirs) {
                if (!goal.line.dirs.has(dir)) continue;
                OppDir od;
                od.dir = static_cast<int>(dir);
                const auto& lines = lines_[od.dir];
                od.values.resize(lines.size());
                for (std::size_t li = 0; li < lines.size(); ++li) {
                    const double p =
                        line_progress(cells_.data(), lines[li], op_sign, me_sign, goal.line.k);
                    od.values[li] = p;
                    if (p > od.top1) {
                        od.top2 = od.top1;
                        od.top1 = p;
                        od.top1_line = static_cast<int>(li);
                    } else if (p > od.top2) {
                        od.top2 = p;
                    }
                }
                table.dirs.push_back(std::move(od));
            }
            double before = 0.0;
            for (const OppDir& od : table.dirs) before = std::max(before, od.top1);
            (goal.losing ? l_before_o : w_before_o) =
                std::max(goal.losing ? l_before_o : w_before_o, before);
            opp_tables_.push_back(std::move(table));
        }
        const double before_block = (std::max(w_before_o, w_full_o >= 0 ? full_before : 0.0)) -
                                    (std::max(l_before_o, l_full_o >= 0 ? full_before : 0.0));

        for (std::size_t mi = 0; mi < legal_.size(); ++mi) {
            const int cell = legal_[mi];
            cells_[static_cast<std::size_t>(cell)] = me_sign;

            // terminal outcome of this move, clauses in program order
            std::optional<Outcome> outcome;
            for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
                const ClauseInfo& clause = clauses_[ci];
                if (clause.only_mover && *clause.only_mover != me) continue;
                const bool fires =
                    clause.is_line
                        ? (pre_true_[ci] != 0 || completes_line(cell, clause.line, me_sign))
                        : fills_board;
                if (fires) {
                    outcome = outcome_of(clause, me);
                    break;
                }
            }
            if (!outcome && fills_board) outcome = Outcome::Draw;

            // mover progress after the move
            double w_local = 0.0, l_local = 0.0;
            for (const GoalCond& goal : goals_[me]) {
                if (!goal.is_line) continue;
                const double p = local_line_progress(cell, goal.line, me_sign, op_sign);
                (goal.losing ? l_local : w_local) =
                    std::max(goal.losing ? l_local : w_local, p);
            }
            const double w_after_m =
                std::max({w_before_m, w_local, w_full_m >= 0 ? full_after : 0.0});
            const double l_after_m =
                std::max({l_before_m, l_local, l_full_m >= 0 ? full_after : 0.0});

            // opponent progress after the move
            double w_after_line_o = 0.0, l_after_line_o = 0.0;
            for (const OppTable& table : opp_tables_) {
                double after = 0.0;
                for (const OppDir& od : table.dirs) {
                    const int lid = cell_line_[od.dir][static_cast<std::size_t>(cell)];
                    const double excl = od.top1_line == lid ? od.top2 : od.top1;
                    const double rec = line_progress(
                        cells_.data(), lines_[od.dir][static_cast<std::size_t>(lid)], op_sign,
                        me_sign, table.k);
                    after = std::max({after, excl, rec});
                }
                (table.losing ? l_after_line_o : w_after_line_o) =
                    std::max(table.losing ? l_after_line_o : w_after_line_o, after);
            }
            const double w_after_o =
                std::max(w_after_line_o, w_full_o >= 0 ? full_after : 0.0);
            const double l_after_o =
                std::max(l_after_line_o, l_full_o >= 0 ? full_after : 0.0);

            cells_[static_cast<std::size_t>(cell)] = 0;

            double value = 0.0;
            if (outcome) {
                if (*outcome == win_for(me)) value += w_win;
                else if (*outcome == win_for(op)) value += w_lose;
            }
            value += w_self * ((w_after_m - l_after_m) - before_self);
            value += w_block * (before_block - (w_after_o - l_after_o));
            out[mi] = value;
        }
    }

    // --- general path (arbitrary conditions) -------------------------------

    void move_values_general(double w_win, double w_lose, double w_self, double w_block,
                             std::vector<double>& out) {
        const int me = mover_;
        const int op = other_player(me);
        const BoardView board{rows(), cols(), cells_.data()};

        auto directed = [&](int player) {
            double best_win = 0.0, best_lose = 0.0;
            for (const GoalCond& goal : goals_[player]) {
                const double p = condition_progress_view(board, player, *goal.cond);
                (goal.losing ? best_lose : best_win) =
                    std::max(goal.losing ? best_lose : best_win, p);
            }
            return best_win - best_lose;
        };
        const double before_self = directed(me);
        const double before_block = directed(op);

        for (std::size_t mi = 0; mi < legal_.size(); ++mi) {
            const int cell = legal_[mi];
            cells_[static_cast<std::size_t>(cell)] = static_cast<std::int8_t>(me);
            const std::optional<Outcome> outcome = terminal_status_view(board, ply_ + 1, *spec_);
            const double after_self = directed(me);
            const double after_block = directed(op);
            cells_[static_cast<std::size_t>(cell)] = 0;

            double value = 0.0;
            if (outcome) {
                if (*outcome == win_for(me)) value += w_win;
                else if (*outcome == win_for(op)) value += w_lose;
            }
            value += w_self * (after_self - before_self);
            value += w_block * (before_block - after_block);
            out[mi] = value;
        }
    }

    std::int8_t at(int row, int col) const {
        return cells_[static_cast<std::size_t>(row) * cols() + col];
    }

    struct OppDir {
        int dir = 0;
        std::vector<double> values;
        double top1 = -1.0;
        int top1_line = -1;
        double top2 = -1.0;
    };
    struct OppTable {
        int k = 1;
        bool losing = false;
        std::vector<OppDir> dirs;
    };

    std::shared_ptr<const GameSpec> spec_;
    int cell_count_ = 0;
    std::array<std::vector<LineRef>, 4> lines_;
    std::array<std::vector<int>, 4> cell_line_;
    std::vector<ClauseInfo> clauses_;
    std::array<std::vector<GoalCond>, 3> goals_;  // indexed by player id
    bool fast_ = true;

    std::vector<std::int8_t> cells_;
    int ply_ = 0;
    int mover_ = 1;
    std::optional<Outcome> terminal_;
    std::vector<int> legal_;

    // per-call scratch
    std::vector<std::uint8_t> pre_true_;
    std::vector<OppTable> opp_tables_;
};

}  // namespace gridplay::detail
