#include "hanabench/agents.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hanabench/errors.hpp"
#include "json_extract.hpp"

namespace hanabench {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

bool is_na_string(const std::string& raw) {
    const std::string s = to_upper(trim(raw));
    return s.empty() || s == "N/A" || s == "NA" || s == "NULL" || s == "NONE";
}

// Integer field tolerant of numeric strings; "N/A"-likes read as absent.
std::optional<int> int_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    const auto& v = j[key];
    if (v.is_number_integer()) return static_cast<int>(v.get<long long>());
    if (v.is_number_float()) {
        const double d = v.get<double>();
        const int i = static_cast<int>(std::lround(d));
        if (std::abs(d - i) > 1e-9) {
            throw SchemaMismatch(std::string(key) + " is not an integer");
        }
        return i;
    }
    if (v.is_string()) {
        const std::string s = trim(v.get<std::string>());
        if (is_na_string(s)) return std::nullopt;
        try {
            std::size_t pos = 0;
            const int i = std::stoi(s, &pos);
            if (pos == s.size()) return i;
        } catch (...) {
        }
        throw SchemaMismatch(std::string(key) + " is not an integer");
    }
    throw SchemaMismatch(std::string(key) + " has the wrong type");
}

std::string text_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return "N/A";
    if (j[key].is_string()) {
        const std::string s = j[key].get<std::string>();
        return trim(s).empty() ? "N/A" : s;
    }
    return j[key].dump();
}

std::string hint_subject(const Action& hint) {
    if (hint.kind == ActionKind::HintColor) return color_name_upper(*hint.hint_color);
    return "RANK " + std::to_string(*hint.hint_rank);
}

}  // namespace

ActionRecord parse_reply(const std::string& raw) {
    const auto extracted = detail::extract_last_json_object(raw);
    if (!extracted) throw NoJsonFound("no parseable json object in the reply");
    const nlohmann::json& j = *extracted;

    if (!j.contains("action_type") || !j["action_type"].is_string()) {
        throw SchemaMismatch("missing required key action_type");
    }
    const std::string kind_str = to_upper(trim(j["action_type"].get<std::string>()));

    ActionRecord record;
    if (kind_str == "PLAY") {
        record.kind = ActionKind::Play;
    } else if (kind_str == "DISCARD") {
        record.kind = ActionKind::Discard;
    } else if (kind_str == "HINT_COLOR" || kind_str == "HINT_COLOUR") {
        record.kind = ActionKind::HintColor;
    } else if (kind_str == "HINT_RANK") {
        record.kind = ActionKind::HintRank;
    } else {
        throw SchemaMismatch("unknown action_type: " + kind_str);
    }

    record.rationale = text_field(j, "rationale");
    record.first_order_tom = text_field(j, "1st_order_ToM");
    record.second_order_tom = text_field(j, "2nd_order_ToM");

    switch (record.kind) {
        case ActionKind::Play:
        case ActionKind::Discard: {
            record.card_index = int_field(j, "card_index");
            if (!record.card_index) {
                throw SchemaMismatch("card_index required for " + kind_str);
            }
            if (*record.card_index < 0 || *record.card_index > 4) {
                throw ValueOutOfRange("card_index " + std::to_string(*record.card_index) +
                                      " outside 0..4");
            }
            break;
        }
        case ActionKind::HintColor: {
            record.hint_player = int_field(j, "hint_player");
            if (!record.hint_player) throw SchemaMismatch("hint_player required for HINT_COLOR");
            if (*record.hint_player < 0 || *record.hint_player > 4) {
                throw ValueOutOfRange("hint_player " + std::to_string(*record.hint_player) +
                                      " outside 0..4");
            }
            if (!j.contains("hint_color") || !j["hint_color"].is_string() ||
                is_na_string(j["hint_color"].get<std::string>())) {
                throw SchemaMismatch("hint_color required for HINT_COLOR");
            }
            const std::string word = trim(j["hint_color"].get<std::string>());
            const auto color = parse_color(word);
            if (!color) throw ValueOutOfRange("unknown hint_color: " + word);
            record.hint_color = color;
            break;
        }
        case ActionKind::HintRank: {
            record.hint_player = int_field(j, "hint_player");
            if (!record.hint_player) throw SchemaMismatch("hint_player required for HINT_RANK");
            if (*record.hint_player < 0 || *record.hint_player > 4) {
                throw ValueOutOfRange("hint_player " + std::to_string(*record.hint_player) +
                                      " outside 0..4");
            }
            auto rank = int_field(j, "hint_rank");
            if (!rank) throw SchemaMismatch("hint_rank required for HINT_RANK");
            // The prompt schema spells ranks 0..4; rank 0 can only mean the
            // zero-based form of rank 1. 1..5 are taken at face value.
            if (*rank == 0) rank = 1;
            if (*rank < 1 || *rank > kMaxRank) {
                throw ValueOutOfRange("hint_rank " + std::to_string(*rank) + " outside 1..5");
            }
            record.hint_rank = rank;
            break;
        }
    }
    return record;
}

Action ActionRecord::to_action() const {
    switch (kind) {
        case ActionKind::Play: return Action::play(*card_index);
        case ActionKind::Discard: return Action::discard(*card_index);
        case ActionKind::HintColor: return Action::hint_color_to(*hint_player, *hint_color);
        case ActionKind::HintRank: return Action::hint_rank_to(*hint_player, *hint_rank);
    }
    throw SchemaMismatch("invalid action kind");
}

nlohmann::ordered_json ActionRecord::to_json() const {
    nlohmann::ordered_json j;
    j["action_type"] = action_kind_name(kind);
    j["card_index"] = card_index ? nlohmann::ordered_json(*card_index)
                                 : nlohmann::ordered_json("N/A");
    j["hint_player"] = hint_player ? nlohmann::ordered_json(*hint_player)
                                   : nlohmann::ordered_json("N/A");
    j["hint_color"] = hint_color ? nlohmann::ordered_json(color_name(*hint_color))
                                 : nlohmann::ordered_json("N/A");
    j["hint_rank"] = hint_rank ? nlohmann::ordered_json(*hint_rank)
                               : nlohmann::ordered_json("N/A");
    j["rationale"] = rationale;
    j["1st_order_ToM"] = first_order_tom;
    j["2nd_order_ToM"] = second_order_tom;
    return j;
}

std::string scripted_hint_rationale(const Action& hint) {
    const std::string subject = hint_subject(hint);
    return "I hinted player " + std::to_string(*hint.hint_player) + " about his " + subject +
           " card(s) because they can be played on the fireworks right now, and I want him "
           "to play them.";
}

std::string scripted_second_order(const Action& hint) {
    const std::string subject = hint_subject(hint);
    return "Player " + std::to_string(*hint.hint_player) + " will read my " + subject +
           " hint as marking card(s) that can be played on the fireworks right now, and he "
           "will play one of them.";
}

std::string first_order_statement(int hinter, const std::string& subject) {
    return "Player " + std::to_string(hinter) + " hinted me about my " + subject +
           " card(s) because they can be played on the fireworks right now, and he wants me "
           "to play them.";
}

std::string scripted_first_order(const GameState& state, int player) {
    // Hints aimed at us since our previous turn sit in the trailing
    // (n_players - 1) history entries.
    const auto& history = state.history;
    const std::size_t window =
        std::min<std::size_t>(history.size(), static_cast<std::size_t>(state.n_players - 1));
    for (std::size_t k = 0; k < window; ++k) {
        const HistoryEntry& entry = history[history.size() - 1 - k];
        if (entry.action.is_hint() && *entry.action.hint_player == player) {
            return first_order_statement(entry.actor, hint_subject(entry.action));
        }
    }
    return "The hint tells me which of my cards can be played on the fireworks right now.";
}

namespace {

ActionRecord record_for(const Action& action, const GameState& state, int player,
                        const PromptBundle& prompt) {
    ActionRecord record;
    record.kind = action.kind;
    record.card_index = action.card_index;
    record.hint_player = action.hint_player;
    record.hint_color = action.hint_color;
    record.hint_rank = action.hint_rank;
    if (action.is_hint()) {
        record.rationale = scripted_hint_rationale(action);
        record.second_order_tom = scripted_second_order(action);
    }
    if (prompt.hinted_addendum) {
        record.first_order_tom = scripted_first_order(state, player);
    }
    return record;
}

AgentTurn scripted_turn(const Action& action, const GameState& state, int player,
                        const PromptBundle& prompt) {
    AgentTurn turn;
    turn.action = action;
    turn.record = record_for(action, state, player, prompt);
    turn.reply.raw_text = turn.record.to_json().dump();
    turn.reply.parsed = turn.record;
    return turn;
}

}  // namespace

AgentTurn RandomLegalAgent::act(const GameState& state, int player, const PromptBundle& prompt,
                                const std::vector<Action>& legal) {
    const std::size_t pick = rng_() % legal.size();
    return scripted_turn(legal[pick], state, player, prompt);
}

AgentTurn GreedyHintAgent::act(const GameState& state, int player, const PromptBundle& prompt,
                               const std::vector<Action>& legal) {
    const auto& know = state.knowledge.row(player);

    // A slot is provably playable if its known attributes pin it to a stack
    // that is exactly one rank short.
    for (std::size_t i = 0; i < know.size(); ++i) {
        if (!know[i].known_rank) continue;
        const int rank = *know[i].known_rank;
        if (know[i].known_color) {
            if (state.fireworks.top(*know[i].known_color) == rank - 1) {
                return scripted_turn(Action::play(static_cast<int>(i)), state, player, prompt);
            }
        } else {
            bool safe_for_all = true;
            for (Color c : all_colors()) {
                if (state.fireworks.top(c) != rank - 1) safe_for_all = false;
            }
            if (safe_for_all) {
                return scripted_turn(Action::play(static_cast<int>(i)), state, player, prompt);
            }
        }
    }

    if (state.info_tokens >= 1) {
        for (int step = 1; step < state.n_players; ++step) {
            const int target = (player + step) % state.n_players;
            const auto& hand = state.hands[target];
            const auto& trow = state.knowledge.row(target);
            for (std::size_t i = 0; i < hand.size(); ++i) {
                if (state.fireworks.top(hand[i].color) != hand[i].rank - 1) continue;
                if (!trow[i].known_rank) {
                    return scripted_turn(Action::hint_rank_to(target, hand[i].rank), state,
                                         player, prompt);
                }
                if (!trow[i].known_color) {
                    return scripted_turn(Action::hint_color_to(target, hand[i].color), state,
                                         player, prompt);
                }
            }
        }
    }

    for (const Action& a : legal) {
        if (a.kind == ActionKind::Discard) return scripted_turn(a, state, player, prompt);
    }
    return scripted_turn(legal.front(), state, player, prompt);
}

namespace {

Action fallback_action(const std::vector<Action>& legal) {
    const Action discard0 = Action::discard(0);
    if (std::find(legal.begin(), legal.end(), discard0) != legal.end()) return discard0;
    const Action play0 = Action::play(0);
    if (std::find(legal.begin(), legal.end(), play0) != legal.end()) return play0;
    return legal.front();
}

std::string schema_reminder() {
    return "End your reply with exactly one valid json object with the keys action_type, "
           "card_index, hint_player, hint_color, hint_rank, rationale, 1st_order_ToM, "
           "2nd_order_ToM, and choose a legal action.";
}

}  // namespace

AgentTurn LlmAgent::act(const GameState& state, int player, const PromptBundle& prompt,
                        const std::vector<Action>& legal) {
    std::vector<ChatMessage> messages{{"user", prompt.turn_prompt}};
    std::string last_raw;

    for (int attempt = 0; attempt < action_retries_; ++attempt) {
        const Completion completion = client_->complete(config_, messages);
        last_raw = completion.text;
        std::string error;
        try {
            ActionRecord record = parse_reply(completion.text);
            const Action action = record.to_action();
            if (std::find(legal.begin(), legal.end(), action) != legal.end()) {
                AgentTurn turn;
                turn.action = action;
                turn.record = std::move(record);
                turn.reply = AgentReply{completion.text, turn.record, std::nullopt};
                turn.retries = attempt;
                return turn;
            }
            try {
                (void)apply_action(state, action);  // only to name the violated rule
                error = "the action is not available this turn";
            } catch (const Error& rule) {
                error = rule.what();
            }
            error = "your action is illegal: " + error;
        } catch (const ParseError& e) {
            error = std::string("your reply could not be parsed: ") + e.what();
        }
        messages.push_back({"assistant", completion.text});
        messages.push_back({"user", error + ". " + schema_reminder()});
    }

    AgentTurn turn;
    turn.fallback = true;
    turn.retries = action_retries_ - 1;
    turn.action = fallback_action(legal);
    turn.record.kind = turn.action.kind;
    turn.record.card_index = turn.action.card_index;
    turn.record.hint_player = turn.action.hint_player;
    turn.record.hint_color = turn.action.hint_color;
    turn.record.hint_rank = turn.action.hint_rank;
    turn.reply = AgentReply{last_raw, std::nullopt, "fallback after retry budget exhausted"};
    return turn;
}

}  // namespace hanabench
