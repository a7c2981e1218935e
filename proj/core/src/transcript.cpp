#include "hanabench/transcript.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "hanabench/errors.hpp"
#include "hanabench/llm_client.hpp"

namespace hanabench {

namespace {

nlohmann::ordered_json card_to_json(const Card& card) {
    return {{"color", color_name(card.color)}, {"rank", card.rank}};
}

}  // namespace

nlohmann::ordered_json action_to_json(const Action& action) {
    nlohmann::ordered_json j;
    j["kind"] = action_kind_name(action.kind);
    if (action.card_index) j["card_index"] = *action.card_index;
    if (action.hint_player) j["hint_player"] = *action.hint_player;
    if (action.hint_color) j["hint_color"] = color_name(*action.hint_color);
    if (action.hint_rank) j["hint_rank"] = *action.hint_rank;
    return j;
}

Action action_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "PLAY") return Action::play(j.at("card_index").get<int>());
    if (kind == "DISCARD") return Action::discard(j.at("card_index").get<int>());
    if (kind == "HINT_COLOR") {
        const auto color = parse_color(j.at("hint_color").get<std::string>());
        if (!color) throw ConfigError("bad hint_color in transcript");
        return Action::hint_color_to(j.at("hint_player").get<int>(), *color);
    }
    if (kind == "HINT_RANK") {
        return Action::hint_rank_to(j.at("hint_player").get<int>(),
                                    j.at("hint_rank").get<int>());
    }
    throw ConfigError("bad action kind in transcript: " + kind);
}

nlohmann::ordered_json state_to_json(const GameState& state) {
    nlohmann::ordered_json j;
    j["round"] = state.round;
    j["turn_player"] = state.turn_player;
    j["n_players"] = state.n_players;
    j["info_tokens"] = state.info_tokens;
    j["life_tokens"] = state.life_tokens;
    j["terminal"] = state.terminal;
    j["end_reason"] = state.end ? nlohmann::ordered_json(end_reason_name(*state.end))
                                : nlohmann::ordered_json(nullptr);
    j["final_round_countdown"] = state.final_round_countdown
                                     ? nlohmann::ordered_json(*state.final_round_countdown)
                                     : nlohmann::ordered_json(nullptr);

    nlohmann::ordered_json fireworks;
    for (Color c : all_colors()) fireworks[color_name(c)] = state.fireworks.top(c);
    j["fireworks"] = fireworks;

    auto hands = nlohmann::ordered_json::array();
    for (const auto& hand : state.hands) {
        auto arr = nlohmann::ordered_json::array();
        for (const Card& card : hand) arr.push_back(card_to_json(card));
        hands.push_back(arr);
    }
    j["hands"] = hands;

    auto deck = nlohmann::ordered_json::array();
    for (const Card& card : state.deck.cards) deck.push_back(card_to_json(card));
    j["deck"] = deck;

    auto discard = nlohmann::ordered_json::array();
    for (const Card& card : state.discard_pile) discard.push_back(card_to_json(card));
    j["discard_pile"] = discard;

    auto knowledge = nlohmann::ordered_json::array();
    for (const auto& row : state.knowledge.rows) {
        auto arr = nlohmann::ordered_json::array();
        for (const SlotKnowledge& slot : row) {
            arr.push_back({{"color", slot.known_color
                                         ? nlohmann::ordered_json(color_name(*slot.known_color))
                                         : nlohmann::ordered_json(nullptr)},
                           {"rank", slot.known_rank ? nlohmann::ordered_json(*slot.known_rank)
                                                    : nlohmann::ordered_json(nullptr)}});
        }
        knowledge.push_back(arr);
    }
    j["knowledge"] = knowledge;

    auto history = nlohmann::ordered_json::array();
    for (const HistoryEntry& entry : state.history) history.push_back(entry.text);
    j["history"] = history;
    return j;
}

std::string state_digest(const GameState& state) {
    const std::uint64_t hash = fnv1a(state_to_json(state).dump());
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << hash;
    return os.str();
}

nlohmann::ordered_json hint_event_to_json(const HintEvent& event) {
    nlohmann::ordered_json j;
    j["type"] = "hint_event";
    j["event_id"] = event.id;
    j["game_id"] = event.game_id;
    j["round"] = event.round;
    j["hinter"] = event.hinter;
    j["recipient"] = event.recipient;
    j["hint_kind"] = action_kind_name(event.kind);
    j["hint_color"] = event.hint_color ? nlohmann::ordered_json(color_name(*event.hint_color))
                                       : nlohmann::ordered_json(nullptr);
    j["hint_rank"] = event.hint_rank ? nlohmann::ordered_json(*event.hint_rank)
                                     : nlohmann::ordered_json(nullptr);
    j["rationale"] = event.rationale;
    j["second_order_tom"] = event.second_order_tom;
    j["first_order_tom"] = event.first_order_tom ? nlohmann::ordered_json(*event.first_order_tom)
                                                 : nlohmann::ordered_json(nullptr);
    j["status"] = hint_status_name(event.status);
    return j;
}

nlohmann::ordered_json judge_score_to_json(const JudgeScore& score) {
    nlohmann::ordered_json j;
    j["type"] = "judge_score";
    j["event_id"] = score.event_id;
    j["first_order_score"] = score.first_order_score;
    j["second_order_score"] = score.second_order_score;
    j["first_order_justification"] = score.first_order_justification;
    j["second_order_justification"] = score.second_order_justification;
    j["clamped"] = score.clamped;
    return j;
}

JudgeScore judge_score_from_json(const nlohmann::json& j) {
    JudgeScore score;
    score.event_id = j.at("event_id").get<std::uint64_t>();
    score.first_order_score = j.at("first_order_score").get<double>();
    score.second_order_score = j.at("second_order_score").get<double>();
    score.first_order_justification = j.value("first_order_justification", "");
    score.second_order_justification = j.value("second_order_justification", "");
    score.clamped = j.value("clamped", false);
    return score;
}

TranscriptWriter::TranscriptWriter(const std::string& path) : out_(path, std::ios::app) {
    if (!out_) throw ConfigError("cannot open transcript for writing: " + path);
}

void TranscriptWriter::write(const nlohmann::ordered_json& record) {
    out_ << record.dump() << "\n";
    out_.flush();
}

GameTranscript read_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open transcript: " + path);
    GameTranscript t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": bad json line");
        }
        const std::string type = j.value("type", "");
        if (type == "header") {
            t.header = std::move(j);
        } else if (type == "turn") {
            t.turns.push_back(std::move(j));
        } else if (type == "hint_event") {
            t.hint_events.push_back(std::move(j));
        } else if (type == "judge_score") {
            t.judge_scores.push_back(std::move(j));
        } else if (type == "final") {
            t.final_record = std::move(j);
        }
    }
    return t;
}

std::vector<std::string> list_transcripts(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    if (!fs::exists(dir)) return paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.rfind("game_", 0) == 0 && entry.path().extension() == ".jsonl") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

}  // namespace hanabench
