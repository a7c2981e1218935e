#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hanabench/llm_client.hpp"
#include "hanabench/tom_ledger.hpp"

namespace hanabench {

struct JudgeScore {
    std::uint64_t event_id = 0;
    double first_order_score = 0.0;   // rationale vs first-order interpretation
    double second_order_score = 0.0;  // first-order interpretation vs prediction
    std::string first_order_justification;
    std::string second_order_justification;
    bool clamped = false;  // a raw score fell outside 0..10
};

struct GameToMSummary {
    std::string game_id;
    int n_scored_events = 0;
    // 0..10 judge scale; absent when nothing was scored.
    std::optional<double> mean_first_order;
    std::optional<double> mean_second_order;
    std::optional<double> mean_overall;  // arithmetic mean of the two axis means

    // 0..100 reporting scale.
    std::optional<double> first_order_100() const;
    std::optional<double> second_order_100() const;
    std::optional<double> overall_100() const;
};

// Scores one paired event with two independent judge calls, one per axis, so
// neither verdict primes the other. Parse failures are retried with feedback
// up to config.max_retries; after that JudgeParseFailure propagates and the
// caller marks the event unscorable.
JudgeScore score_event(ChatClient& client, const ModelConfig& judge_config,
                       const HintEvent& event);

GameToMSummary summarize_game(const std::string& game_id,
                              const std::vector<JudgeScore>& scores);

}  // namespace hanabench
