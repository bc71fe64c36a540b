// Command-line driver: corpus validation, restricted-grammar screening,
// batch game evaluation, design-space sampling, maximum-entropy fitting,
// and optional proposal scoring against an external endpoint.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gridplay/config.hpp"
#include "gridplay/corpus.hpp"
#include "gridplay/endpoint.hpp"
#include "gridplay/evaluator.hpp"
#include "gridplay/maxent.hpp"
#include "gridplay/parallel.hpp"
#include "gridplay/parse.hpp"
#include "gridplay/print.hpp"
#include "gridplay/reference.hpp"
#include "gridplay/report.hpp"
#include "gridplay/sampler.hpp"
#include "gridplay/validate.hpp"

namespace {

using namespace gridplay;

void report_quarantine(const Corpus& corpus) {
    for (const CorpusDiagnostic& d : corpus.quarantined)
        std::cerr << "warning: line " << d.line_number << " quarantined: " << d.message << "\n";
}

struct ParsedCorpus {
    std::vector<CorpusRecord> records;
    std::vector<GameSpec> specs;
};

ParsedCorpus parse_corpus(const std::filesystem::path& path) {
    Corpus corpus = load_corpus(path);
    report_quarantine(corpus);
    ParsedCorpus out;
    out.records = std::move(corpus.records);
    out.specs.reserve(out.records.size());
    for (const CorpusRecord& record : out.records) out.specs.push_back(parse(record.program));
    return out;
}

int cmd_validate(const std::filesystem::path& corpus_path) {
    const Corpus corpus = load_corpus(corpus_path);
    report_quarantine(corpus);
    std::size_t errors = corpus.quarantined.size();
    std::size_t warnings = 0;
    for (const CorpusRecord& record : corpus.records) {
        const GameSpec spec = parse(record.program);
        const auto diags = validate(spec);
        if (diags.empty()) {
            std::cout << record.id << ": ok\n";
            continue;
        }
        for (const Diagnostic& d : diags) {
            const bool is_error = d.severity == Severity::Error;
            (is_error ? errors : warnings) += 1;
            std::cout << record.id << ": " << (is_error ? "error" : "warning") << ": "
                      << d.message << "\n";
        }
    }
    std::cout << corpus.records.size() << " records, " << corpus.quarantined.size()
              << " quarantined, " << warnings << " warnings, " << errors << " errors\n";
    return errors == 0 ? 0 : 1;
}

int cmd_restricted(const std::filesystem::path& corpus_path, const std::string& out_path) {
    const ParsedCorpus corpus = parse_corpus(corpus_path);
    std::ostringstream out;
    out << "id,restricted\n";
    for (std::size_t i = 0; i < corpus.records.size(); ++i)
        out << detail::csv_escape(corpus.records[i].id) << ','
            << (in_restricted_grammar(corpus.specs[i]) ? 1 : 0) << '\n';
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw Error("cannot write " + out_path);
        file << out.str();
    }
    return 0;
}

int cmd_eval(const std::filesystem::path& corpus_path, std::uint64_t seed,
             const std::string& config_path, const std::string& reference_path,
             const std::string& out_path, unsigned threads, int max_cells_flag) {
    FunnessConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    if (max_cells_flag > 0) config.max_cells = max_cells_flag;

    const ParsedCorpus corpus = parse_corpus(corpus_path);
    for (std::size_t i = 0; i < corpus.specs.size(); ++i) {
        const BoardSpec& board = corpus.specs[i].board;
        if (board.cell_count() > config.max_cells)
            throw Error("game '" + corpus.records[i].id + "' has a " +
                        std::to_string(board.rows) + "x" + std::to_string(board.cols) +
                        " board exceeding the cap of " + std::to_string(config.max_cells) +
                        " cells; raise --max-cells to evaluate it");
    }

    std::vector<GameSpec> reference;
    if (reference_path.empty()) {
        reference = reference_games();
    } else {
        ParsedCorpus ref = parse_corpus(reference_path);
        reference = std::move(ref.specs);
        for (std::size_t i = 0; i < reference.size(); ++i)
            if (reference[i].board.cell_count() > config.max_cells)
                throw Error("reference game '" + ref.records[i].id + "' exceeds the board cap");
    }

    // one deterministic task list: reference first, then the corpus
    constexpr std::uint64_t kReferenceSalt = 0x7e7e5eed;
    std::vector<double> reference_u(reference.size());
    std::vector<EvalResult> results(corpus.specs.size());
    const std::size_t total = reference.size() + corpus.specs.size();
    parallel_for(total, threads, [&](std::size_t task) {
        if (task < reference.size()) {
            reference_u[task] =
                funness(reference[task], config, mix_seed(seed ^ kReferenceSalt, task)).u_sim;
        } else {
            const std::size_t i = task - reference.size();
            results[i] = evaluate_game(corpus.specs[i], config, mix_seed(seed, i));
        }
    });

    std::vector<EvalRow> rows;
    rows.reserve(corpus.specs.size());
    for (std::size_t i = 0; i < corpus.specs.size(); ++i) {
        const EvalResult& r = results[i];
        EvalRow row;
        row.id = corpus.records[i].id;
        row.rows = corpus.specs[i].board.rows;
        row.cols = corpus.specs[i].board.cols;
        row.restricted = in_restricted_grammar(corpus.specs[i]);
        row.u_sim = r.score.u_sim;
        row.balance = r.score.balance;
        row.challenge = r.score.challenge;
        row.length_score = r.score.length_score;
        row.mean_length = r.score.mean_length;
        row.p1 = r.selfplay.dist.p1;
        row.draw = r.selfplay.dist.draw;
        row.p2 = r.selfplay.dist.p2;
        row.payoff = r.payoff;
        row.entropy = r.entropy;
        row.percentile = percentile(r.score.u_sim, reference_u);
        row.logp_base = corpus.records[i].logp_base;
        row.n_selfplay = r.selfplay.n;
        row.n_vs_random = config.n_vs_random;
        row.seed = r.selfplay.seed;
        rows.push_back(std::move(row));
    }
    if (out_path.empty())
        write_report(rows, std::cout);
    else
        write_report(rows, std::filesystem::path(out_path));
    return 0;
}

int cmd_sample(std::size_t n, std::uint64_t seed, const std::string& out_path,
               SamplerConfig config) {
    config.seed = seed;
    RngStream rng(seed);
    const std::vector<GameSpec> games = sample_unique_games(n, rng, config);
    std::vector<CorpusRecord> records;
    records.reserve(games.size());
    for (const GameSpec& game : games) {
        CorpusRecord record;
        record.id = game.name;
        record.program = print(game);
        records.push_back(std::move(record));
    }
    save_corpus(records, out_path);
    std::cout << "wrote " << records.size() << " games to " << out_path << "\n";
    return 0;
}

std::vector<ScoredGame> load_scored_report(const std::filesystem::path& path, bool presence) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open report file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("empty report file: " + path.string());
    const std::vector<std::string> header = split_csv_line(line);
    std::ptrdiff_t id_col = -1, u_col = -1, logp_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "id") id_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == "u_sim") u_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == "logp_base") logp_col = static_cast<std::ptrdiff_t>(i);
    }
    if (id_col < 0 || u_col < 0 || logp_col < 0)
        throw Error(path.string() + ": report must contain id, u_sim, and logp_base columns");
    std::vector<ScoredGame> games;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw Error(path.string() + ":" + std::to_string(line_number) +
                        ": malformed report row");
        ScoredGame game;
        game.id = fields[static_cast<std::size_t>(id_col)];
        game.u_sim = std::stod(fields[static_cast<std::size_t>(u_col)]);
        const std::string& logp = fields[static_cast<std::size_t>(logp_col)];
        if (logp.empty())
            throw Error(path.string() + ": game '" + game.id +
                        "' has no logp_base; score it first (see score-proposal)");
        game.logp_base = std::stod(logp);
        game.is_presence = presence;
        games.push_back(std::move(game));
    }
    return games;
}

int cmd_fit(const std::string& presence_path, const std::string& background_path, double lambda,
            const std::string& grid_text, const std::string& out_path) {
    FitConfig config;
    config.lambda = lambda;
    if (!grid_text.empty()) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(grid_text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
            throw Error("--grid expects lo:hi:step, got '" + grid_text + "'");
        config.theta_grid = make_theta_grid(lo, hi, step);
    }
    const auto presence = load_scored_report(presence_path, true);
    const auto background = load_scored_report(background_path, false);
    const MaxEntFit fit = fit_sweep(presence, background, config);
    const auto [statistic, df] = likelihood_ratio_test(fit);

    std::cout << "n_presence " << fit.n_presence << "\n"
              << "n_background " << fit.n_background << "\n"
              << "theta_hat " << detail::format_fixed6(fit.theta_hat) << "\n"
              << "loglik_at_theta_hat " << detail::format_fixed6(fit.loglik_at_theta_hat) << "\n"
              << "loglik_at_zero " << detail::format_fixed6(fit.loglik_at_zero) << "\n"
              << "lrt_statistic " << detail::format_fixed6(statistic) << "\n"
              << "lrt_df " << df << "\n";

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error("cannot write " + out_path);
        out << "theta,penalized_loglik,loglik\n";
        for (const auto& [theta, penalized] : fit.curve)
            out << detail::format_fixed6(theta) << ',' << detail::format_fixed6(penalized) << ','
                << detail::format_fixed6(
                       dataset_log_likelihood(presence, background, theta, 0.0))
                << '\n';
    }
    return 0;
}

int cmd_score_proposal(const std::filesystem::path& corpus_path,
                       const std::string& endpoint_config_path, const std::string& out_path) {
    const EndpointConfig endpoint = load_endpoint_config(endpoint_config_path);
    Corpus corpus = load_corpus(corpus_path);
    report_quarantine(corpus);
    std::map<std::string, const CorpusRecord*> by_id;
    for (const CorpusRecord& record : corpus.records) by_id[record.id] = &record;

    for (CorpusRecord& record : corpus.records) {
        std::vector<std::string> context;
        for (const std::string& context_id : record.context_ids) {
            const auto it = by_id.find(context_id);
            if (it == by_id.end())
                throw Error("game '" + record.id + "' references unknown context id '" +
                            context_id + "'");
            context.push_back(it->second->program);
        }
        record.logp_base = score_proposal(record.program, context, endpoint);
        std::cerr << record.id << " " << detail::format_fixed6(*record.logp_base) << "\n";
    }
    save_corpus(corpus.records, out_path);
    std::cout << "wrote " << corpus.records.size() << " scored games to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridplay: describe, simulate, and analyze two-player grid placement games"};
    app.require_subcommand(1);

    std::string corpus_path, out_path, config_path, reference_path, endpoint_config_path;
    std::string presence_path, background_path, grid_text;
    std::uint64_t seed = 0;
    std::size_t sample_n = 0;
    unsigned threads = std::thread::hardware_concurrency();
    int max_cells = 0;
    double lambda = 0.1;
    SamplerConfig sampler_config;

    auto* validate_cmd = app.add_subcommand("validate", "parse and validate every corpus game");
    validate_cmd->add_option("corpus", corpus_path, "corpus file (JSONL)")->required();

    auto* restricted_cmd =
        app.add_subcommand("restricted", "report restricted-grammar membership per game");
    restricted_cmd->add_option("corpus", corpus_path, "corpus file (JSONL)")->required();
    restricted_cmd->add_option("--out", out_path, "output CSV (default stdout)");

    auto* eval_cmd = app.add_subcommand("eval", "simulate every corpus game and report funness");
    eval_cmd->add_option("corpus", corpus_path, "corpus file (JSONL)")->required();
    eval_cmd->add_option("--seed", seed, "base seed")->required();
    eval_cmd->add_option("--config", config_path, "run configuration (key=value file)");
    eval_cmd->add_option("--reference", reference_path,
                         "reference corpus for percentiles (default: built-in surrogate)");
    eval_cmd->add_option("--out", out_path, "output CSV (default stdout)");
    eval_cmd->add_option("--threads", threads, "worker threads");
    eval_cmd->add_option("--max-cells", max_cells, "raise the board-size guard");

    auto* sample_cmd = app.add_subcommand("sample", "sample unique games from the design space");
    sample_cmd->add_option("--n", sample_n, "number of unique games")->required();
    sample_cmd->add_option("--seed", seed, "sampler seed")->required();
    sample_cmd->add_option("--out", out_path, "output corpus file")->required();
    sample_cmd->add_option("--board-min", sampler_config.board_min, "minimum board side");
    sample_cmd->add_option("--board-max", sampler_config.board_max, "maximum board side");
    sample_cmd->add_option("--deviation-prob", sampler_config.deviation_prob,
                           "per-deviation probability");
    sample_cmd->add_option("--k-min", sampler_config.k_min, "minimum target line length");

    auto* fit_cmd = app.add_subcommand("fit", "fit the presence-only maxent weight");
    fit_cmd->add_option("--presence", presence_path, "eval report of the observed games")
        ->required();
    fit_cmd->add_option("--background", background_path, "eval report of the background games")
        ->required();
    fit_cmd->add_option("--lambda", lambda, "L1 penalty strength");
    fit_cmd->add_option("--grid", grid_text, "theta grid as lo:hi:step (default 0:20:0.1)");
    fit_cmd->add_option("--out", out_path, "write the likelihood curve CSV here");

    auto* score_cmd =
        app.add_subcommand("score-proposal", "fetch proposal log-probabilities per game");
    score_cmd->add_option("corpus", corpus_path, "corpus file (JSONL)")->required();
    score_cmd->add_option("--endpoint-config", endpoint_config_path, "endpoint settings file")
        ->required();
    score_cmd->add_option("--out", out_path, "output corpus with logp_base filled")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(corpus_path);
        if (restricted_cmd->parsed()) return cmd_restricted(corpus_path, out_path);
        if (eval_cmd->parsed())
            return cmd_eval(corpus_path, seed, config_path, reference_path, out_path,
                            threads == 0 ? 1 : threads, max_cells);
        if (sample_cmd->parsed()) return cmd_sample(sample_n, seed, out_path, sampler_config);
        if (fit_cmd->parsed())
            return cmd_fit(presence_path, background_path, lambda, grid_text, out_path);
        if (score_cmd->parsed())
            return cmd_score_proposal(corpus_path, endpoint_config_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
