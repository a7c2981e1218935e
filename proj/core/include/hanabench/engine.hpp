#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hanabench/knowledge.hpp"
#include "hanabench/types.hpp"

namespace hanabench {

struct Deck {
    std::vector<Card> cards;  // draw from the front
    std::uint64_t rng_seed = 0;
};

// 50 cards (per color: 3x rank-1, 2x ranks 2-4, 1x rank-5), Fisher-Yates
// shuffled by a portable seeded generator: same seed, same order everywhere.
Deck build_deck(std::uint64_t seed);

struct Fireworks {
    std::array<int, kNumColors> tops{};  // 0 = empty stack

    int top(Color c) const { return tops[static_cast<int>(c)]; }
    bool operator==(const Fireworks&) const = default;
};

struct GameState {
    int round = 1;
    int turn_player = 0;
    int n_players = 0;
    std::vector<std::vector<Card>> hands;
    Deck deck;
    Fireworks fireworks;
    int info_tokens = kMaxInfoTokens;
    int life_tokens = kMaxLifeTokens;
    std::vector<Card> discard_pile;
    std::vector<HistoryEntry> history;
    KnowledgeMatrix knowledge;
    // Turns left once the last card has been drawn; unset while the deck holds cards.
    std::optional<int> final_round_countdown;
    bool terminal = false;
    std::optional<EndReason> end;

    int hand_size() const { return n_players; }  // 2->2, 3->3, 4->4, 5->5
};

GameState new_game(int n_players, std::uint64_t seed);

// Every action the acting player may take right now. Throws NotYourTurn if
// player is out of turn, GameOver on a finished game.
std::vector<Action> legal_actions(const GameState& state, int player);

// Pure transition; throws IllegalAction naming the violated rule.
std::pair<GameState, Outcome> apply_action(const GameState& state, const Action& action);

std::optional<EndReason> end_reason(const GameState& state);

int raw_score(const GameState& state);         // 0..25
double normalized_score(const GameState& state);  // raw x4, 0..100

}  // namespace hanabench
