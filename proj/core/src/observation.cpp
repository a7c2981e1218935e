#include "hanabench/observation.hpp"

#include <sstream>

namespace hanabench {

namespace {

std::string hint_subject(const Action& hint) {
    if (hint.kind == ActionKind::HintColor) {
        return "COLOR " + color_name_upper(*hint.hint_color);
    }
    return "RANK " + std::to_string(*hint.hint_rank);
}

std::string slot_tuple(const SlotKnowledge& slot) {
    std::string color = slot.known_color ? "'" + color_name(*slot.known_color) + "'" : "'?'";
    std::string rank = slot.known_rank ? std::to_string(*slot.known_rank) : "'?'";
    return "(" + color + ", " + rank + ")";
}

std::string hand_tuples(const std::vector<Card>& hand) {
    std::string out = "[";
    for (std::size_t i = 0; i < hand.size(); ++i) {
        if (i) out += ", ";
        out += card_tuple(hand[i]);
    }
    return out + "]";
}

std::string knowledge_tuples(const std::vector<SlotKnowledge>& row) {
    std::string out = "[";
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ", ";
        out += slot_tuple(row[i]);
    }
    return out + "]";
}

// Fixture render order for the fireworks map.
constexpr std::array<Color, kNumColors> kFireworksOrder = {
    Color::Red, Color::Blue, Color::Green, Color::White, Color::Yellow};

}  // namespace

std::string hint_history_sentence(int round, int actor, const Action& hint) {
    std::ostringstream os;
    os << "In round " << round << ", the player " << actor << " HINT the player "
       << *hint.hint_player << " about his card(s) of " << hint_subject(hint);
    return os.str();
}

std::string play_history_sentence(int round, int actor, int index, const Card& card,
                                  bool success) {
    std::ostringstream os;
    os << "In round " << round << ", the player " << actor
       << " PLAYED the card at index " << index << ", which was " << card_tuple(card)
       << (success ? " [success]" : " [failure]");
    return os.str();
}

std::string discard_history_sentence(int round, int actor, int index, const Card& card) {
    std::ostringstream os;
    os << "In round " << round << ", the player " << actor
       << " DISCARDED the card at index " << index << ", which was " << card_tuple(card);
    return os.str();
}

ObservationView render_view(const GameState& state, int player,
                            const KnowledgeMatrix& matrix) {
    ObservationView view;
    view.round = state.round;
    view.viewer = player;
    view.fireworks = state.fireworks;
    view.own_hand_text = knowledge_tuples(matrix.row(player));
    for (int p = 0; p < state.n_players; ++p) {
        if (p == player) continue;
        view.other_hands.emplace_back(p, hand_tuples(state.hands[p]));
    }
    const auto& history = state.history;
    std::size_t start =
        history.size() > kHistoryWindow ? history.size() - kHistoryWindow : 0;
    for (std::size_t i = start; i < history.size(); ++i) {
        view.game_history.push_back(history[i].text);
    }
    view.information_tokens = state.info_tokens;
    view.life_tokens = state.life_tokens;
    view.hand_size = state.hand_size();
    return view;
}

ObservationView render_view(const GameState& state, int player) {
    return render_view(state, player, state.knowledge);
}

nlohmann::ordered_json ObservationView::to_json() const {
    nlohmann::ordered_json j;
    j["round"]["description"] =
        "An integer keeping track of the current round in the game. Start from 1.";
    j["round"]["content"] = round;

    j["fireworks"]["description"] =
        "A dictionary showing the state of firework stacks, the numbers show the current "
        "highest rank of the corresponding color.";
    nlohmann::ordered_json stacks;
    for (Color c : kFireworksOrder) {
        stacks[color_name(c)] = fireworks.top(c);
    }
    j["fireworks"]["content"] = stacks;

    j["knowledge"]["description"] =
        "A list showing your own view of the cards in all players' hands. Each card is "
        "represented by a tuple i.e. (COLOR, RANK). The symbol '?' means unknown color or "
        "unknown rank. The card index from 0 to " +
        std::to_string(hand_size - 1) + ", with the leftmost having an index of 0.";
    nlohmann::ordered_json hands;
    hands["The cards in your own hands"] = own_hand_text;
    for (const auto& [p, tuples] : other_hands) {
        hands["The cards in Player_id " + std::to_string(p) + "'s hands from your view"] =
            tuples;
    }
    j["knowledge"]["content"] = hands;

    j["game_history"]["description"] =
        "A list of dictionaries showing the previous 10 actions of different players.";
    j["game_history"]["content"] = game_history;

    j["information_tokens"]["description"] =
        "An integer showing the current number of information tokens";
    j["information_tokens"]["content"] = information_tokens;

    j["life_tokens"]["description"] =
        "An integer showing the current number of life tokens";
    j["life_tokens"]["content"] = life_tokens;
    return j;
}

std::string ObservationView::text() const { return to_json().dump(2); }

}  // namespace hanabench
