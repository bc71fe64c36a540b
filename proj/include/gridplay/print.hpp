#pragma once

// Canonical textual form of a game spec. The output is deterministic (fixed
// field order, lowercase keywords, single spaces, explicit schedule and
// direction sets) so it doubles as the structural-equality key for corpus
// deduplication.

#include <string>

#include "gridplay/game.hpp"

namespace gridplay {

namespace detail {

inline void print_string_literal(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

inline void print_condition(std::string& out, const Condition& cond) {
    struct Visitor {
        std::string& out;
        void operator()(const LineCond& c) const {
            out += "(line " + std::to_string(c.k) + " (dirs";
            if (c.dirs.has(Dir::H)) out += " h";
            if (c.dirs.has(Dir::V)) out += " v";
            if (c.dirs.has(Dir::D1)) out += " d1";
            if (c.dirs.has(Dir::D2)) out += " d2";
            out += "))";
        }
        void operator()(const ShapeCond& c) const {
            out += "(shape (cells";
            for (const Offset& o : c.cells)
                out += " (" + std::to_string(o.row) + " " + std::to_string(o.col) + ")";
            out += ")";
            if (c.rotations) out += " rot";
            if (c.reflections) out += " refl";
            out += ")";
        }
        void operator()(const CountCond& c) const {
            out += "(count " + std::to_string(c.n) + " ";
            print_condition(out, c.inner.front());
            out += ")";
        }
        void operator()(const AllCond& c) const {
            out += "(and";
            for (const Condition& child : c.children) {
                out += " ";
                print_condition(out, child);
            }
            out += ")";
        }
        void operator()(const AnyCond& c) const {
            out += "(or";
            for (const Condition& child : c.children) {
                out += " ";
                print_condition(out, child);
            }
            out += ")";
        }
        void operator()(const BoardFullCond&) const { out += "(full)"; }
    };
    std::visit(Visitor{out}, cond.node);
}

inline void print_clause(std::string& out, const EndClause& clause) {
    out += "(";
    switch (clause.effect) {
        case Effect::WinForMover: out += "win"; break;
        case Effect::LoseForMover: out += "lose"; break;
        case Effect::Draw: out += "draw"; break;
        case Effect::WinForPlayer:
            out += "(win-for " + std::to_string(clause.beneficiary) + ")";
            break;
    }
    if (clause.only_mover) out += " (by " + std::to_string(*clause.only_mover) + ")";
    out += " ";
    print_condition(out, clause.condition);
    out += ")";
}

}  // namespace detail

inline std::string print(const GameSpec& spec) {
    std::string out = "(game ";
    detail::print_string_literal(out, spec.name);
    out += " (board " + std::to_string(spec.board.rows) + " " +
           std::to_string(spec.board.cols) + ")";
    out += " (play (order ";
    if (!spec.schedule.prefix.empty()) {
        out += "(prefix";
        for (int p : spec.schedule.prefix) out += " " + std::to_string(p);
        out += ") ";
    }
    out += "(cycle";
    for (int p : spec.schedule.cycle) out += " " + std::to_string(p);
    out += ")) (place))";
    out += " (end";
    for (const EndClause& clause : spec.end_clauses) {
        out += " ";
        detail::print_clause(out, clause);
    }
    out += "))";
    return out;
}

}  // namespace gridplay
