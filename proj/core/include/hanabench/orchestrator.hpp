#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hanabench/analysis.hpp"
#include "hanabench/llm_client.hpp"
#include "hanabench/transcript.hpp"

namespace hanabench {

enum class SeatKind { Random, Greedy, MockLlm, Llm };

std::string seat_kind_name(SeatKind k);

struct SeatSpec {
    SeatKind kind = SeatKind::Random;
    ModelConfig model;  // Llm seats only
};

struct RunConfig {
    std::string label = "run";
    int n_players = 5;
    int n_games = 30;
    std::uint64_t base_seed = 1;  // game g is seeded base_seed + g
    int parallelism = 1;
    std::string output_dir = "out";
    std::int64_t token_budget = 0;  // 0 = unlimited
    int action_retries = 3;
    std::vector<SeatSpec> seats;  // one entry replicates across all seats
    std::optional<ModelConfig> judge_model;
    bool judge_mock = false;

    static RunConfig from_json(const nlohmann::json& j);  // throws ConfigError
    static RunConfig load_file(const std::string& path);
    nlohmann::ordered_json to_json() const;
    void validate() const;
};

struct RunResult {
    std::vector<GameStats> games;   // completed this invocation or resumed
    int games_played = 0;
    int games_resumed = 0;
    bool budget_exceeded = false;
    std::vector<std::string> errors;
};

// Plays config.n_games games (in parallel up to config.parallelism), writing
// one JSONL transcript per game under config.output_dir. Games whose
// transcript already holds a final record are not re-played. client_override
// replaces the provider client for Llm seats (tests, canned replies).
RunResult run(const RunConfig& config, std::shared_ptr<ChatClient> client_override = nullptr);

struct ReplayVerdict {
    bool ok = false;
    int turns_checked = 0;
    std::vector<std::string> mismatches;  // "turn 12: expected <d> got <d>"
    std::optional<std::string> error;
};

// Re-applies the transcript's action sequence from its seed and compares the
// per-turn state digests.
ReplayVerdict replay_transcript(const std::string& path);

struct JudgeResult {
    int events_scored = 0;
    int events_skipped = 0;   // already scored
    int events_unscorable = 0;
};

// Scores every paired, not-yet-scored hint event in the run directory,
// appending judge_score records to each transcript. Re-runnable.
JudgeResult judge_phase(const std::string& run_dir, const ModelConfig& judge_config,
                        ChatClient& client);

struct AnalysisOutput {
    std::vector<RunReport> reports;
    std::vector<CorrelationResult> correlations;
};

// Builds Table-1-style reports plus score/ToM correlations from one run
// directory per model, writing report.csv/report.md/correlations.csv and
// per-axis scatter SVG + points CSV under out_dir.
AnalysisOutput analyze_phase(const std::vector<std::string>& run_dirs,
                             const std::string& out_dir);

// Stats for one completed transcript (final record + judge scores).
GameStats stats_from_transcript(const GameTranscript& t);

HintEvent hint_event_from_json(const nlohmann::json& j);

}  // namespace hanabench
