#include "hanabench/judge.hpp"

#include <algorithm>
#include <cmath>

#include "hanabench/errors.hpp"
#include "hanabench/prompts.hpp"
#include "json_extract.hpp"

namespace hanabench {

namespace {

struct AxisResult {
    double score;
    std::string justification;
    bool clamped;
};

AxisResult judge_axis(ChatClient& client, const ModelConfig& config, int axis,
                      const std::string& text_a, const std::string& text_b) {
    std::vector<ChatMessage> messages{{"user", build_judge_prompt(axis, text_a, text_b)}};
    const int attempts = std::max(1, config.max_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const Completion completion = client.complete(config, messages);
        const auto j = detail::extract_last_json_object(completion.text);
        if (j && j->contains("score") && (*j)["score"].is_number()) {
            AxisResult result;
            const double raw = (*j)["score"].get<double>();
            result.score = std::clamp(raw, 0.0, 10.0);
            result.clamped = raw < 0.0 || raw > 10.0;
            result.justification = j->value("justification", "");
            return result;
        }
        messages.push_back({"assistant", completion.text});
        messages.push_back(
            {"user", "Your reply was not usable. Reply with a single json object of the form "
                     "{\"score\": <integer 0-10>, \"justification\": \"<one sentence>\"}."});
    }
    throw JudgeParseFailure("judge returned no usable score after " +
                            std::to_string(attempts) + " attempts");
}

}  // namespace

JudgeScore score_event(ChatClient& client, const ModelConfig& judge_config,
                       const HintEvent& event) {
    if (!event.paired() || !event.first_order_tom) {
        throw JudgeParseFailure("event " + std::to_string(event.id) + " is not paired");
    }
    JudgeScore score;
    score.event_id = event.id;

    const AxisResult first =
        judge_axis(client, judge_config, 1, event.rationale, *event.first_order_tom);
    const AxisResult second =
        judge_axis(client, judge_config, 2, *event.first_order_tom, event.second_order_tom);

    score.first_order_score = first.score;
    score.first_order_justification = first.justification;
    score.second_order_score = second.score;
    score.second_order_justification = second.justification;
    score.clamped = first.clamped || second.clamped;
    return score;
}

GameToMSummary summarize_game(const std::string& game_id,
                              const std::vector<JudgeScore>& scores) {
    GameToMSummary summary;
    summary.game_id = game_id;
    summary.n_scored_events = static_cast<int>(scores.size());
    if (scores.empty()) return summary;

    double first = 0.0;
    double second = 0.0;
    for (const JudgeScore& s : scores) {
        first += s.first_order_score;
        second += s.second_order_score;
    }
    summary.mean_first_order = first / scores.size();
    summary.mean_second_order = second / scores.size();
    summary.mean_overall = (*summary.mean_first_order + *summary.mean_second_order) / 2.0;
    return summary;
}

std::optional<double> GameToMSummary::first_order_100() const {
    if (!mean_first_order) return std::nullopt;
    return *mean_first_order * 10.0;
}

std::optional<double> GameToMSummary::second_order_100() const {
    if (!mean_second_order) return std::nullopt;
    return *mean_second_order * 10.0;
}

std::optional<double> GameToMSummary::overall_100() const {
    if (!mean_overall) return std::nullopt;
    return *mean_overall * 10.0;
}

}  // namespace hanabench
