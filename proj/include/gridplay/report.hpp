#pragma once

// Evaluation report rows and the fixed CSV schema they serialize to. Every
// floating-point field is printed with six decimals and rows keep their
// input order, so reports are byte-stable for a given seed.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gridplay/evaluator.hpp"

namespace gridplay {

struct EvalRow {
    std::string id;
    int rows = 0;
    int cols = 0;
    bool restricted = false;
    double u_sim = 0.0;
    double balance = 0.0;
    double challenge = 0.0;
    double length_score = 0.0;
    double mean_length = 0.0;
    double p1 = 0.0;
    double draw = 0.0;
    double p2 = 0.0;
    double payoff = 0.0;
    double entropy = 0.0;
    double percentile = 0.0;
    std::optional<double> logp_base;
    int n_selfplay = 0;
    int n_vs_random = 0;
    std::uint64_t seed = 0;
};

inline constexpr const char* kReportHeader =
    "id,rows,cols,restricted,u_sim,balance,challenge,length_score,mean_length,"
    "p1,draw,p2,payoff,entropy,percentile,logp_base,n_selfplay,n_vs_random,seed";

namespace detail {

inline std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

inline std::string format_report_row(const EvalRow& row) {
    using detail::format_fixed6;
    std::string out = detail::csv_escape(row.id);
    out += ',' + std::to_string(row.rows);
    out += ',' + std::to_string(row.cols);
    out += row.restricted ? ",1" : ",0";
    out += ',' + format_fixed6(row.u_sim);
    out += ',' + format_fixed6(row.balance);
    out += ',' + format_fixed6(row.challenge);
    out += ',' + format_fixed6(row.length_score);
    out += ',' + format_fixed6(row.mean_length);
    out += ',' + format_fixed6(row.p1);
    out += ',' + format_fixed6(row.draw);
    out += ',' + format_fixed6(row.p2);
    out += ',' + format_fixed6(row.payoff);
    out += ',' + format_fixed6(row.entropy);
    out += ',' + format_fixed6(row.percentile);
    out += ',';
    if (row.logp_base) out += format_fixed6(*row.logp_base);
    out += ',' + std::to_string(row.n_selfplay);
    out += ',' + std::to_string(row.n_vs_random);
    out += ',' + std::to_string(row.seed);
    return out;
}

inline void write_report(const std::vector<EvalRow>& rows, std::ostream& out) {
    out << kReportHeader << '\n';
    for (const EvalRow& row : rows) out << format_report_row(row) << '\n';
}

inline void write_report(const std::vector<EvalRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write report file: " + path.string());
    write_report(rows, out);
    if (!out) throw Error("failed writing report file: " + path.string());
}

// Minimal CSV field splitter for reading reports back (quoted fields with
// doubled quotes, no embedded newlines).
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace gridplay
