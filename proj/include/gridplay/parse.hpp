#pragma once

// Recursive-descent parser for the parenthesized game description language.
//
//   game   := "(game" STRING board play end ")"
//   board  := "(board" INT INT ")"                      ; rows cols
//   play   := "(play" order? "(place)" ")"
//   order  := "(order" ("(prefix" INT* ")")? "(cycle" INT+ ")" ")"
//   end    := "(end" clause+ ")"
//   clause := "(" ("win"|"lose"|"draw"|"(win-for" INT ")") by? cond ")"
//   by     := "(by" INT ")"
//   cond   := "(line" INT ("(dirs" DIR+ ")")? ")"       ; dirs omitted = all four
//           | "(shape" "(cells" PAIR+ ")" ("rot")? ("refl")? ")"
//           | "(square" INT ")" | "(plus" INT ")" | "(ell" INT ")"
//           | "(count" INT cond ")" | "(and" cond+ ")" | "(or" cond+ ")" | "(full)"
//   DIR    := "h" | "v" | "d1" | "d2";  PAIR := "(" INT INT ")"
//
// Whitespace-insensitive; ";" starts a comment running to end of line.
// Sugar forms (square/plus/ell, omitted order, omitted dirs) are expanded,
// and an implicit board-full draw clause is appended when the program
// declares no draw rule.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "gridplay/game.hpp"

namespace gridplay {

struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& message)
        : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + message),
          line(line_),
          col(col_) {}
};

namespace detail {

enum class TokKind { LParen, RParen, Symbol, Int, String, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    long long value = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space_and_comments();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::End;
            return;
        }
        const char c = src_[pos_];
        if (c == '(') {
            tok_.kind = TokKind::LParen;
            consume();
            return;
        }
        if (c == ')') {
            tok_.kind = TokKind::RParen;
            consume();
            return;
        }
        if (c == '"') {
            lex_string();
            return;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        lex_symbol();
    }

    void lex_string() {
        consume();  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= src_.size())
                throw ParseError(tok_.line, tok_.col, "unterminated string literal");
            char c = src_[pos_];
            if (c == '"') {
                consume();
                break;
            }
            if (c == '\\') {
                consume();
                if (pos_ >= src_.size())
                    throw ParseError(tok_.line, tok_.col, "unterminated string escape");
                c = src_[pos_];
            }
            out += c;
            consume();
        }
        tok_.kind = TokKind::String;
        tok_.text = std::move(out);
    }

    void lex_number() {
        std::string out;
        if (src_[pos_] == '-') {
            out += '-';
            consume();
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError(tok_.line, tok_.col, "expected digits after '-'");
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            out += src_[pos_];
            consume();
        }
        tok_.kind = TokKind::Int;
        tok_.text = out;
        try {
            tok_.value = std::stoll(out);
        } catch (const std::exception&) {
            throw ParseError(tok_.line, tok_.col, "integer out of range: " + out);
        }
    }

    void lex_symbol() {
        std::string out;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '(' || c == ')' || c == '"' || c == ';' ||
                std::isspace(static_cast<unsigned char>(c)))
                break;
            out += c;
            consume();
        }
        if (out.empty())
            throw ParseError(line_, col_, std::string("unexpected character '") + src_[pos_] + "'");
        tok_.kind = TokKind::Symbol;
        tok_.text = std::move(out);
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') consume();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                consume();
            } else {
                break;
            }
        }
    }

    void consume() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    GameSpec parse_game() {
        expect_lparen();
        expect_keyword("game");
        GameSpec spec;
        spec.name = expect_string("game name").text;
        spec.board = parse_board();
        spec.schedule = parse_play();
        spec.end_clauses = parse_end();
        expect_rparen();
        const Token& trailing = lex_.peek();
        if (trailing.kind != TokKind::End)
            throw ParseError(trailing.line, trailing.col, "trailing input after game form");
        return normalized(std::move(spec));
    }

private:
    BoardSpec parse_board() {
        expect_lparen();
        expect_keyword("board");
        BoardSpec board;
        Token rows = expect_int("board rows");
        Token cols = expect_int("board cols");
        if (rows.value < 1)
            throw ParseError(rows.line, rows.col,
                             "board rows must be >= 1, got " + rows.text);
        if (cols.value < 1)
            throw ParseError(cols.line, cols.col,
                             "board cols must be >= 1, got " + cols.text);
        board.rows = static_cast<int>(rows.value);
        board.cols = static_cast<int>(cols.value);
        expect_rparen();
        return board;
    }

    Schedule parse_play() {
        expect_lparen();
        expect_keyword("play");
        Schedule schedule;  // default: empty prefix, cycle 1 2
        expect_lparen();
        Token head = expect_symbol("'order' or 'place'");
        if (head.text == "order") {
            schedule.prefix.clear();
            schedule.cycle.clear();
            expect_lparen();
            Token section = expect_symbol("'prefix' or 'cycle'");
            if (section.text == "prefix") {
                while (lex_.peek().kind == TokKind::Int)
                    schedule.prefix.push_back(parse_player_id("prefix player"));
                expect_rparen();
                expect_lparen();
                section = expect_symbol("'cycle'");
            }
            if (section.text != "cycle")
                throw ParseError(section.line, section.col,
                                 "expected 'cycle', got '" + section.text + "'");
            while (lex_.peek().kind == TokKind::Int)
                schedule.cycle.push_back(parse_player_id("cycle player"));
            if (schedule.cycle.empty())
                throw ParseError(section.line, section.col, "cycle requires at least one player");
            expect_rparen();
            expect_rparen();  // close order
            expect_lparen();
            head = expect_symbol("'place'");
        }
        if (head.text != "place")
            throw ParseError(head.line, head.col, "expected 'place', got '" + head.text + "'");
        expect_rparen();  // close place
        expect_rparen();  // close play
        return schedule;
    }

    std::vector<EndClause> parse_end() {
        expect_lparen();
        expect_keyword("end");
        std::vector<EndClause> clauses;
        while (lex_.peek().kind == TokKind::LParen) clauses.push_back(parse_clause());
        if (clauses.empty()) {
            const Token& t = lex_.peek();
            throw ParseError(t.line, t.col, "end requires at least one clause");
        }
        expect_rparen();
        return clauses;
    }

    EndClause parse_clause() {
        expect_lparen();
        EndClause clause;
        if (lex_.peek().kind == TokKind::LParen) {
            expect_lparen();
            expect_keyword("win-for");
            clause.effect = Effect::WinForPlayer;
            clause.beneficiary = parse_player_id("win-for player");
            expect_rparen();
        } else {
            Token head = expect_symbol("clause effect");
            if (head.text == "win") {
                clause.effect = Effect::WinForMover;
            } else if (head.text == "lose") {
                clause.effect = Effect::LoseForMover;
            } else if (head.text == "draw") {
                clause.effect = Effect::Draw;
            } else {
                throw ParseError(head.line, head.col,
                                 "unknown clause effect '" + head.text + "'");
            }
        }
        // optional (by INT) scope, then the condition
        expect_lparen();
        Token head = expect_symbol("clause body");
        if (head.text == "by") {
            clause.only_mover = parse_player_id("by player");
            expect_rparen();
            expect_lparen();
            head = expect_symbol("condition");
        }
        clause.condition = parse_condition_body(head);
        expect_rparen();  // close clause
        return clause;
    }

    Condition parse_condition() {
        expect_lparen();
        Token head = expect_symbol("condition");
        return parse_condition_body(head);
    }

    // Parses the condition whose head symbol has already been consumed;
    // consumes through the matching close paren.
    Condition parse_condition_body(const Token& head) {
        if (head.text == "line") {
            Token k = expect_int("line length");
            if (k.value < 1)
                throw ParseError(k.line, k.col, "line length must be >= 1, got " + k.text);
            DirSet dirs = DirSet::all();
            if (lex_.peek().kind == TokKind::LParen) {
                expect_lparen();
                expect_keyword("dirs");
                dirs = DirSet{};
                while (lex_.peek().kind == TokKind::Symbol) {
                    Token d = lex_.next();
                    if (d.text == "h") dirs.bits |= DirSet::mask_of(Dir::H);
                    else if (d.text == "v") dirs.bits |= DirSet::mask_of(Dir::V);
                    else if (d.text == "d1") dirs.bits |= DirSet::mask_of(Dir::D1);
                    else if (d.text == "d2") dirs.bits |= DirSet::mask_of(Dir::D2);
                    else
                        throw ParseError(d.line, d.col, "unknown direction '" + d.text + "'");
                }
                if (dirs.empty()) {
                    const Token& t = lex_.peek();
                    throw ParseError(t.line, t.col, "dirs requires at least one direction");
                }
                expect_rparen();
            }
            expect_rparen();
            return line(static_cast<int>(k.value), dirs);
        }
        if (head.text == "shape") {
            expect_lparen();
            expect_keyword("cells");
            std::vector<Offset> cells;
            while (lex_.peek().kind == TokKind::LParen) {
                expect_lparen();
                Token r = expect_int("cell row offset");
                Token c = expect_int("cell col offset");
                cells.push_back({static_cast<int>(r.value), static_cast<int>(c.value)});
                expect_rparen();
            }
            if (cells.empty()) {
                const Token& t = lex_.peek();
                throw ParseError(t.line, t.col, "cells requires at least one offset pair");
            }
            expect_rparen();  // close cells
            bool rotations = false, reflections = false;
            while (lex_.peek().kind == TokKind::Symbol) {
                Token flag = lex_.next();
                if (flag.text == "rot") rotations = true;
                else if (flag.text == "refl") reflections = true;
                else
                    throw ParseError(flag.line, flag.col,
                                     "unknown shape flag '" + flag.text + "'");
            }
            expect_rparen();
            return shape(std::move(cells), rotations, reflections);
        }
        if (head.text == "square") {
            Token n = expect_int("square side");
            if (n.value < 1)
                throw ParseError(n.line, n.col, "square side must be >= 1, got " + n.text);
            expect_rparen();
            return shape(square_offsets(static_cast<int>(n.value)));
        }
        if (head.text == "plus") {
            Token n = expect_int("plus cell count");
            if (n.value < 5 || (n.value - 1) % 4 != 0)
                throw ParseError(n.line, n.col,
                                 "plus cell count must be 4*arm+1 with arm >= 1, got " + n.text);
            expect_rparen();
            return shape(plus_offsets(static_cast<int>(n.value)));
        }
        if (head.text == "ell") {
            Token n = expect_int("ell cell count");
            if (n.value < 3)
                throw ParseError(n.line, n.col, "ell cell count must be >= 3, got " + n.text);
            expect_rparen();
            return shape(ell_offsets(static_cast<int>(n.value)), /*rotations=*/true,
                         /*reflections=*/true);
        }
        if (head.text == "count") {
            Token n = expect_int("count n");
            if (n.value < 1)
                throw ParseError(n.line, n.col, "count n must be >= 1, got " + n.text);
            Condition inner = parse_condition();
            expect_rparen();
            return count_at_least(static_cast<int>(n.value), std::move(inner));
        }
        if (head.text == "and" || head.text == "or") {
            std::vector<Condition> children;
            while (lex_.peek().kind == TokKind::LParen) children.push_back(parse_condition());
            if (children.empty())
                throw ParseError(head.line, head.col,
                                 "'" + head.text + "' requires at least one condition");
            expect_rparen();
            return head.text == "and" ? all_of(std::move(children))
                                      : any_of(std::move(children));
        }
        if (head.text == "full") {
            expect_rparen();
            return board_full();
        }
        throw ParseError(head.line, head.col, "unknown condition '" + head.text + "'");
    }

    int parse_player_id(const char* what) {
        Token t = expect_int(what);
        if (t.value != 1 && t.value != 2)
            throw ParseError(t.line, t.col,
                             std::string(what) + " must be 1 or 2, got " + t.text);
        return static_cast<int>(t.value);
    }

    void expect_lparen() {
        Token t = lex_.next();
        if (t.kind != TokKind::LParen)
            throw ParseError(t.line, t.col, "expected '(', got " + describe(t));
    }

    void expect_rparen() {
        Token t = lex_.next();
        if (t.kind != TokKind::RParen)
            throw ParseError(t.line, t.col, "expected ')', got " + describe(t));
    }

    void expect_keyword(const std::string& kw) {
        Token t = lex_.next();
        if (t.kind != TokKind::Symbol || t.text != kw)
            throw ParseError(t.line, t.col, "expected '" + kw + "', got " + describe(t));
    }

    Token expect_symbol(const char* what) {
        Token t = lex_.next();
        if (t.kind != TokKind::Symbol)
            throw ParseError(t.line, t.col,
                             "expected " + std::string(what) + ", got " + describe(t));
        return t;
    }

    Token expect_int(const char* what) {
        Token t = lex_.next();
        if (t.kind != TokKind::Int)
            throw ParseError(t.line, t.col,
                             "expected integer " + std::string(what) + ", got " + describe(t));
        return t;
    }

    Token expect_string(const char* what) {
        Token t = lex_.next();
        if (t.kind != TokKind::String)
            throw ParseError(t.line, t.col,
                             "expected string " + std::string(what) + ", got " + describe(t));
        return t;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokKind::LParen: return "'('";
            case TokKind::RParen: return "')'";
            case TokKind::Symbol: return "'" + t.text + "'";
            case TokKind::Int: return "integer " + t.text;
            case TokKind::String: return "string literal";
            case TokKind::End: return "end of input";
        }
        return "?";
    }

    Lexer lex_;
};

}  // namespace detail

inline GameSpec parse(std::string_view text) {
    return detail::Parser(text).parse_game();
}

}  // namespace gridplay
