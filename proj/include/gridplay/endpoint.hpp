#pragma once

// Optional client for fetching proposal log-probabilities from an external
// token-scoring endpoint. The endpoint receives a prompt (task instructions
// plus the context programs, in order) and the target program, and must
// return per-token log-probabilities for the target span:
//
//   POST {base_url}/v1/score
//   {"prompt": "...", "target": "...", "temperature": 0.5}
//   -> {"token_logprobs": [-1.2, -0.4, ...]}
//
// The returned proposal score is the arithmetic mean of the target token
// log-probabilities, so longer programs are not penalized for length alone.
// The API key is read from the environment variable named in the config,
// never from flags or files.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "gridplay/game.hpp"

namespace gridplay {

struct EndpointConfig {
    std::string base_url;
    std::string api_key_env = "GRIDPLAY_API_KEY";
    double temperature = 0.5;
    double timeout_s = 30.0;
    int max_retries = 2;
};

inline EndpointConfig load_endpoint_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open endpoint config file: " + path.string());
    EndpointConfig config;
    std::string raw;
    std::size_t line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string stripped;
        {
            const std::size_t b = raw.find_first_not_of(" \t\r");
            const std::size_t e = raw.find_last_not_of(" \t\r");
            if (b != std::string::npos) stripped = raw.substr(b, e - b + 1);
        }
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw Error("endpoint config line " + std::to_string(line_number) +
                        ": expected key=value");
        const std::string key = stripped.substr(0, eq);
        const std::string value = stripped.substr(eq + 1);
        if (key == "base_url") config.base_url = value;
        else if (key == "api_key_env") config.api_key_env = value;
        else if (key == "temperature") config.temperature = std::stod(value);
        else if (key == "timeout_s") config.timeout_s = std::stod(value);
        else if (key == "max_retries") config.max_retries = std::stoi(value);
        else
            throw Error("endpoint config line " + std::to_string(line_number) +
                        ": unknown key '" + key + "'");
    }
    if (config.base_url.empty()) throw Error("endpoint config: base_url is required");
    if (config.max_retries < 0) throw Error("endpoint config: max_retries must be >= 0");
    return config;
}

// Prompt shown to the scoring model before the target program: the creation
// task, then the context programs in their given order.
inline std::string build_scoring_prompt(const std::vector<std::string>& context) {
    std::ostringstream out;
    out << "You design two-player grid placement games, written in a symbolic "
           "game description language.\n"
        << "Below are games you have recently seen. Propose a new game of the "
           "same kind that would be fun to play, in the same symbolic form.\n\n";
    for (std::size_t i = 0; i < context.size(); ++i)
        out << "Game " << i + 1 << ":\n" << context[i] << "\n\n";
    out << "Now write your new game:\n";
    return out.str();
}

// Mean token log-probability of `program` under the scoring endpoint,
// conditioned on the context programs. Transient failures (connection
// errors, HTTP 429/5xx) are retried up to max_retries times.
inline double score_proposal(const std::string& program, const std::vector<std::string>& context,
                             const EndpointConfig& config) {
    nlohmann::json request;
    request["prompt"] = build_scoring_prompt(context);
    request["target"] = program;
    request["temperature"] = config.temperature;
    const std::string body = request.dump();

    httplib::Client client(config.base_url);
    const auto timeout = std::chrono::duration<double>(config.timeout_s);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    if (const char* key = std::getenv(config.api_key_env.c_str()); key && *key)
        client.set_default_headers({{"Authorization", std::string("Bearer ") + key}});

    std::string last_error;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        httplib::Result result = client.Post("/v1/score", body, "application/json");
        if (!result) {
            last_error = "connection error: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 429 || result->status >= 500) {
            last_error = "HTTP " + std::to_string(result->status);
            continue;
        }
        if (result->status != 200)
            throw Error("scoring endpoint rejected the request: HTTP " +
                        std::to_string(result->status));
        nlohmann::json response;
        try {
            response = nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("scoring endpoint returned invalid JSON: ") + e.what());
        }
        if (!response.contains("token_logprobs") || !response["token_logprobs"].is_array() ||
            response["token_logprobs"].empty())
            throw Error("scoring endpoint did not return token log-probabilities");
        double total = 0.0;
        std::size_t count = 0;
        for (const auto& v : response["token_logprobs"]) {
            if (!v.is_number())
                throw Error("scoring endpoint returned a non-numeric token log-probability");
            total += v.get<double>();
            ++count;
        }
        return total / static_cast<double>(count);
    }
    throw Error("scoring endpoint failed after " + std::to_string(config.max_retries + 1) +
                " attempts (" + last_error + ")");
}

}  // namespace gridplay
