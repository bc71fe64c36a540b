#pragma once

// Corpus ingestion and emission. A corpus is a line-delimited JSON file,
// one record per line:
//   {"id": "...", "program": "(game ...)", "logp_base": -1.5,
//    "context_ids": ["..."], "meta": {"key": "value"}}
// logp_base, context_ids, and meta are optional. Records whose line fails to
// parse, or whose program is not valid DSL, are quarantined with a
// diagnostic instead of aborting the load; duplicate ids are a hard error.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "gridplay/parse.hpp"

namespace gridplay {

struct CorpusRecord {
    std::string id;
    std::string program;
    std::optional<double> logp_base;
    std::vector<std::string> context_ids;
    std::map<std::string, std::string> meta;
    bool operator==(const CorpusRecord&) const = default;
};

struct CorpusDiagnostic {
    std::size_t line_number = 0;
    std::string message;
};

struct Corpus {
    std::vector<CorpusRecord> records;
    std::vector<CorpusDiagnostic> quarantined;
};

inline Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path.string());

    Corpus corpus;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            corpus.quarantined.push_back({line_number, std::string("invalid JSON: ") + e.what()});
            continue;
        }
        if (!record.is_object() || !record.contains("id") || !record["id"].is_string() ||
            record["id"].get<std::string>().empty()) {
            corpus.quarantined.push_back({line_number, "record is missing a string 'id'"});
            continue;
        }
        const std::string id = record["id"].get<std::string>();
        if (!ids.insert(id).second)
            throw Error("duplicate corpus id '" + id + "' at line " +
                        std::to_string(line_number));
        if (!record.contains("program") || !record["program"].is_string()) {
            corpus.quarantined.push_back(
                {line_number, "record '" + id + "' is missing a string 'program'"});
            continue;
        }
        CorpusRecord out;
        out.id = id;
        out.program = record["program"].get<std::string>();
        try {
            (void)parse(out.program);
        } catch (const Error& e) {
            corpus.quarantined.push_back(
                {line_number, "record '" + id + "': program does not parse: " + e.what()});
            continue;
        }
        if (record.contains("logp_base")) {
            if (!record["logp_base"].is_number()) {
                corpus.quarantined.push_back(
                    {line_number, "record '" + id + "': logp_base must be a number"});
                continue;
            }
            out.logp_base = record["logp_base"].get<double>();
        }
        if (record.contains("context_ids")) {
            if (!record["context_ids"].is_array()) {
                corpus.quarantined.push_back(
                    {line_number, "record '" + id + "': context_ids must be an array"});
                continue;
            }
            bool ok = true;
            for (const auto& item : record["context_ids"]) {
                if (!item.is_string()) {
                    ok = false;
                    break;
                }
                out.context_ids.push_back(item.get<std::string>());
            }
            if (!ok) {
                corpus.quarantined.push_back(
                    {line_number, "record '" + id + "': context_ids must hold strings"});
                continue;
            }
        }
        if (record.contains("meta")) {
            if (!record["meta"].is_object()) {
                corpus.quarantined.push_back(
                    {line_number, "record '" + id + "': meta must be an object"});
                continue;
            }
            bool ok = true;
            for (const auto& [key, value] : record["meta"].items()) {
                if (!value.is_string()) {
                    ok = false;
                    break;
                }
                out.meta[key] = value.get<std::string>();
            }
            if (!ok) {
                corpus.quarantined.push_back(
                    {line_number, "record '" + id + "': meta values must be strings"});
                continue;
            }
        }
        corpus.records.push_back(std::move(out));
    }
    return corpus;
}

inline void save_corpus(const std::vector<CorpusRecord>& records,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write corpus file: " + path.string());
    for (const CorpusRecord& record : records) {
        nlohmann::json j;
        j["id"] = record.id;
        j["program"] = record.program;
        if (record.logp_base) j["logp_base"] = *record.logp_base;
        if (!record.context_ids.empty()) j["context_ids"] = record.context_ids;
        if (!record.meta.empty()) j["meta"] = record.meta;
        out << j.dump() << '\n';
    }
    if (!out) throw Error("failed writing corpus file: " + path.string());
}

}  // namespace gridplay
