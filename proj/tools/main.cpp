// hanabench: plays benchmark Hanabi runs with scripted or LLM-backed seats,
// scores hint reasoning with an LLM judge, and reports game/ToM statistics.

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hanabench/errors.hpp"
#include "hanabench/mock_model.hpp"
#include "hanabench/orchestrator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // verification or runtime failure
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitProvider = 4;

using namespace hanabench;

struct RunFlags {
    std::string config_path;
    std::string agents;
    std::string label;
    std::string output_dir;
    int games = 0;
    int players = 0;
    std::int64_t seed = -1;
    int parallelism = 0;
    std::int64_t budget = -1;
};

RunConfig resolve_run_config(const RunFlags& flags) {
    if (!flags.agents.empty() && !flags.config_path.empty()) {
        throw ConfigError("--agents and --config are mutually exclusive");
    }
    RunConfig config;
    if (!flags.config_path.empty()) {
        config = RunConfig::load_file(flags.config_path);
    } else {
        if (flags.agents.empty()) {
            throw ConfigError("either --config or --agents is required");
        }
        nlohmann::json j;
        j["seats"] = nlohmann::json::array({{{"agent", flags.agents}}});
        config = RunConfig::from_json(j);
        config.label = flags.agents;
    }
    if (flags.games > 0) config.n_games = flags.games;
    if (flags.players > 0) config.n_players = flags.players;
    if (flags.seed >= 0) config.base_seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.parallelism > 0) config.parallelism = flags.parallelism;
    if (flags.budget >= 0) config.token_budget = flags.budget;
    if (!flags.label.empty()) config.label = flags.label;
    if (!flags.output_dir.empty()) config.output_dir = flags.output_dir;
    config.validate();
    return config;
}

int cmd_run(const RunFlags& flags) {
    const RunConfig config = resolve_run_config(flags);
    const RunResult result = run(config);

    double sum = 0.0;
    for (const GameStats& g : result.games) sum += g.normalized_score;
    std::cout << "label=" << config.label << " games=" << result.games.size()
              << " (played " << result.games_played << ", resumed " << result.games_resumed
              << ") mean_score="
              << (result.games.empty() ? 0.0 : sum / result.games.size()) << "\n";
    std::cout << "transcripts: " << config.output_dir << "\n";

    if (result.budget_exceeded) {
        std::cerr << "run stopped early: " << result.errors.front() << "\n";
        return kExitBudget;
    }
    if (!result.errors.empty()) {
        for (const auto& e : result.errors) std::cerr << "error: " << e << "\n";
        return kExitProvider;
    }
    return kExitOk;
}

int cmd_judge(const std::string& transcripts_dir, const std::string& config_path,
              bool use_mock) {
    ModelConfig judge_config;
    std::shared_ptr<ChatClient> client;
    std::shared_ptr<RateLimiter> limiter;
    std::shared_ptr<CallLog> log;

    if (use_mock) {
        client = std::make_shared<MockChatClient>(make_mock_judge_handler());
        judge_config.model_name = "mock-judge";
    } else {
        if (config_path.empty()) {
            throw ConfigError("judge requires --config with a judge section, or --mock");
        }
        const RunConfig run_config = RunConfig::load_file(config_path);
        if (run_config.judge_mock) {
            client = std::make_shared<MockChatClient>(make_mock_judge_handler());
            judge_config.model_name = "mock-judge";
        } else if (run_config.judge_model) {
            judge_config = *run_config.judge_model;
            limiter = std::make_shared<RateLimiter>(judge_config.rate_limit_per_min);
            log = std::make_shared<CallLog>();
            client = std::make_shared<HttpChatClient>(limiter, nullptr, log);
        } else {
            throw ConfigError("config file has no judge section");
        }
    }

    const JudgeResult result = judge_phase(transcripts_dir, judge_config, *client);
    std::cout << "scored=" << result.events_scored << " skipped=" << result.events_skipped
              << " unscorable=" << result.events_unscorable << "\n";
    return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& out_dir) {
    const AnalysisOutput output = analyze_phase(inputs, out_dir);
    if (output.reports.empty()) {
        std::cerr << "no completed transcripts found under the given inputs\n";
        return kExitFailure;
    }
    std::cout << report_markdown(output.reports);
    for (const CorrelationResult& c : output.correlations) {
        std::cout << "r(" << c.axis << ", "
                  << (c.granularity == Granularity::PerGame ? "per_game" : "per_model")
                  << ") = " << c.pearson_r << "  n=" << c.n << "\n";
    }
    std::cout << "reports: " << out_dir << "\n";
    return kExitOk;
}

int cmd_replay(const std::string& transcript, const std::string& dir) {
    std::vector<std::string> paths;
    if (!transcript.empty()) paths.push_back(transcript);
    if (!dir.empty()) {
        for (const auto& p : list_transcripts(dir)) paths.push_back(p);
    }
    if (paths.empty()) {
        throw ConfigError("replay needs --transcript FILE or --transcripts DIR");
    }

    int bad = 0;
    for (const std::string& path : paths) {
        const ReplayVerdict verdict = replay_transcript(path);
        if (verdict.ok) {
            std::cout << "OK   " << path << " (" << verdict.turns_checked << " turns)\n";
            continue;
        }
        ++bad;
        std::cout << "FAIL " << path << "\n";
        if (verdict.error) std::cout << "     error: " << *verdict.error << "\n";
        for (const auto& m : verdict.mismatches) std::cout << "     " << m << "\n";
    }
    std::cout << (paths.size() - bad) << "/" << paths.size() << " transcripts verified\n";
    return bad == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hanabi benchmark harness for LLM agents with ToM scoring"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "play games and write transcripts");
    run_cmd->add_option("--config", run_flags.config_path, "run config json file");
    run_cmd->add_option("--agents", run_flags.agents,
                        "agent kind for every seat (random|greedy|mock-llm)");
    run_cmd->add_option("--label", run_flags.label, "report label for this run");
    run_cmd->add_option("--games", run_flags.games, "number of games");
    run_cmd->add_option("--players", run_flags.players, "players per game (2-5)");
    run_cmd->add_option("--seed", run_flags.seed, "base seed (game g uses seed+g)");
    run_cmd->add_option("--out", run_flags.output_dir, "transcript output directory");
    run_cmd->add_option("--parallelism", run_flags.parallelism, "concurrent games");
    run_cmd->add_option("--budget", run_flags.budget, "token budget (0 = unlimited)");

    std::string judge_dir, judge_config;
    bool judge_mock = false;
    auto* judge_cmd = app.add_subcommand("judge", "score paired hint events in transcripts");
    judge_cmd->add_option("--transcripts", judge_dir, "run directory")->required();
    judge_cmd->add_option("--config", judge_config, "run config json with a judge section");
    judge_cmd->add_flag("--mock", judge_mock, "use the deterministic word-overlap judge");

    std::vector<std::string> analyze_inputs;
    std::string analyze_out = "reports";
    auto* analyze_cmd = app.add_subcommand("analyze", "build reports and correlations");
    analyze_cmd->add_option("--inputs", analyze_inputs, "run directories (one per model)")
        ->required()
        ->expected(-1);
    analyze_cmd->add_option("--out", analyze_out, "report output directory");

    std::string replay_file, replay_dir;
    auto* replay_cmd = app.add_subcommand("replay", "verify transcript digests");
    replay_cmd->add_option("--transcript", replay_file, "one transcript file");
    replay_cmd->add_option("--transcripts", replay_dir, "run directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_flags);
        if (judge_cmd->parsed()) return cmd_judge(judge_dir, judge_config, judge_mock);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_inputs, analyze_out);
        if (replay_cmd->parsed()) return cmd_replay(replay_file, replay_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const AuthError& e) {
        std::cerr << "auth error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const ProviderError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
