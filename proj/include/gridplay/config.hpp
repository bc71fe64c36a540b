#pragma once

// Flat key=value run configuration covering playout counts, sampling
// temperatures, agent weights, funness coefficients, and the board-size
// guard. Lines starting with '#' are comments; unknown keys are errors so
// typos do not silently fall back to defaults.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "gridplay/evaluator.hpp"

namespace gridplay {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline FunnessConfig parse_config(const std::string& text,
                                  FunnessConfig base = FunnessConfig{}) {
    FunnessConfig config = base;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        const std::string stripped = detail::trim(raw);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(line_number) +
                        ": expected key=value, got '" + stripped + "'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        const auto as_double = [&] {
            try {
                std::size_t used = 0;
                const double v = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
                return v;
            } catch (const std::exception&) {
                throw Error("config line " + std::to_string(line_number) + ": '" + key +
                            "' expects a number, got '" + value + "'");
            }
        };
        const auto as_int = [&] {
            const double v = as_double();
            const int i = static_cast<int>(v);
            if (static_cast<double>(i) != v)
                throw Error("config line " + std::to_string(line_number) + ": '" + key +
                            "' expects an integer, got '" + value + "'");
            return i;
        };

        if (key == "n_selfplay") config.n_selfplay = as_int();
        else if (key == "selfplay_temperature") config.selfplay_temperature = as_double();
        else if (key == "n_vs_random") config.n_vs_random = as_int();
        else if (key == "vs_random_temperature") config.vs_random_temperature = as_double();
        else if (key == "c0") config.c0 = as_double();
        else if (key == "c_balance") config.c_balance = as_double();
        else if (key == "c_challenge") config.c_challenge = as_double();
        else if (key == "c_length") config.c_length = as_double();
        else if (key == "length_target_fraction") config.length_target_fraction = as_double();
        else if (key == "length_width_fraction") config.length_width_fraction = as_double();
        else if (key == "w_win") config.weights.w_win = as_double();
        else if (key == "w_lose") config.weights.w_lose = as_double();
        else if (key == "w_self") config.weights.w_self = as_double();
        else if (key == "w_block") config.weights.w_block = as_double();
        else if (key == "max_cells") config.max_cells = as_int();
        else
            throw Error("config line " + std::to_string(line_number) + ": unknown key '" +
                        key + "'");
    }
    if (config.n_selfplay < 1 || config.n_vs_random < 1)
        throw Error("config: playout counts must be >= 1");
    if (!(config.selfplay_temperature > 0.0) || !(config.vs_random_temperature > 0.0))
        throw Error("config: temperatures must be positive");
    if (!(config.length_target_fraction > 0.0) || config.length_target_fraction > 1.0)
        throw Error("config: length_target_fraction must be in (0, 1]");
    if (!(config.length_width_fraction > 0.0))
        throw Error("config: length_width_fraction must be positive");
    return config;
}

inline FunnessConfig load_config(const std::filesystem::path& path,
                                 FunnessConfig base = FunnessConfig{}) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), base);
}

}  // namespace gridplay
