#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hanabench/engine.hpp"

namespace hanabench {

// Fixed history sentence templates. Hints follow the harness's canonical
// phrasing; play/discard lines reuse its card-tuple notation.
std::string hint_history_sentence(int round, int actor, const Action& hint);
std::string play_history_sentence(int round, int actor, int index, const Card& card,
                                  bool success);
std::string discard_history_sentence(int round, int actor, int index, const Card& card);

inline constexpr int kHistoryWindow = 10;

// One player's structured view of the game: own hand as hinted knowledge,
// everyone else's hand face-up, plus the trailing 10 history sentences.
struct ObservationView {
    int round = 1;
    int viewer = 0;
    Fireworks fireworks;
    std::string own_hand_text;                      // "[('?', '?'), ...]"
    std::vector<std::pair<int, std::string>> other_hands;  // (player id, tuple list)
    std::vector<std::string> game_history;          // trailing window
    int information_tokens = 0;
    int life_tokens = 0;
    int hand_size = 0;

    nlohmann::ordered_json to_json() const;
    // Canonical rendering: fixture key order, two-space indent.
    std::string text() const;
};

ObservationView render_view(const GameState& state, int player, const KnowledgeMatrix& matrix);
ObservationView render_view(const GameState& state, int player);

}  // namespace hanabench
