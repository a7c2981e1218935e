#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hanabench/agents.hpp"
#include "hanabench/engine.hpp"
#include "hanabench/judge.hpp"
#include "hanabench/tom_ledger.hpp"

namespace hanabench {

// Canonical JSON for the full game state; digests hash this rendering.
nlohmann::ordered_json state_to_json(const GameState& state);
std::string state_digest(const GameState& state);

nlohmann::ordered_json action_to_json(const Action& action);
Action action_from_json(const nlohmann::json& j);

nlohmann::ordered_json hint_event_to_json(const HintEvent& event);
nlohmann::ordered_json judge_score_to_json(const JudgeScore& score);
JudgeScore judge_score_from_json(const nlohmann::json& j);

// One JSON object per line, one file per game. Records carry a "type" field:
// header, turn, hint_event, judge_score, final. Flushed per line (crash-safe).
class TranscriptWriter {
public:
    explicit TranscriptWriter(const std::string& path);
    void write(const nlohmann::ordered_json& record);

private:
    std::ofstream out_;
};

struct GameTranscript {
    nlohmann::json header;
    std::vector<nlohmann::json> turns;
    std::vector<nlohmann::json> hint_events;
    std::vector<nlohmann::json> judge_scores;
    nlohmann::json final_record;  // null until the game completed

    bool complete() const { return !final_record.is_null(); }
};

GameTranscript read_transcript(const std::string& path);

// All game_*.jsonl files under a run directory, sorted by name.
std::vector<std::string> list_transcripts(const std::string& dir);

}  // namespace hanabench
