#include "hanabench/engine.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "hanabench/errors.hpp"
#include "hanabench/observation.hpp"

namespace hanabench {

namespace {

// Rejection-sampled bound keeps the shuffle identical across platforms,
// unlike std::shuffle whose distribution is implementation-defined.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

void check_in_hand(const GameState& state, const Action& action) {
    if (!action.card_index) {
        throw IllegalAction("play/discard requires a card index");
    }
    const auto& hand = state.hands[state.turn_player];
    if (*action.card_index < 0 || *action.card_index >= static_cast<int>(hand.size())) {
        throw IllegalAction("card index out of range of the hand");
    }
}

void check_hint(const GameState& state, const Action& action) {
    if (state.info_tokens < 1) {
        throw IllegalAction("hints require an information token");
    }
    if (!action.hint_player) {
        throw IllegalAction("hint requires a target player");
    }
    const int target = *action.hint_player;
    if (target < 0 || target >= state.n_players) {
        throw IllegalAction("hint target out of range");
    }
    if (target == state.turn_player) {
        throw IllegalAction("you cannot hint yourself");
    }
    if (action.kind == ActionKind::HintColor && !action.hint_color) {
        throw IllegalAction("color hint requires a color");
    }
    if (action.kind == ActionKind::HintRank) {
        if (!action.hint_rank) throw IllegalAction("rank hint requires a rank");
        if (*action.hint_rank < 1 || *action.hint_rank > kMaxRank) {
            throw IllegalAction("hint rank out of range");
        }
    }
    bool matches = false;
    for (const Card& card : state.hands[target]) {
        if (action.kind == ActionKind::HintColor && card.color == *action.hint_color) {
            matches = true;
        }
        if (action.kind == ActionKind::HintRank && card.rank == *action.hint_rank) {
            matches = true;
        }
    }
    if (!matches) {
        throw IllegalAction("hint matches no card in the target's hand");
    }
}

// Removes index i (closing the gap) and, if the deck still holds cards,
// appends the drawn card at the rightmost slot. Mirrors the knowledge row.
std::optional<Card> remove_and_draw(GameState& state, int player, int index) {
    auto& hand = state.hands[player];
    hand.erase(hand.begin() + index);
    remove_slot(state.knowledge, player, index);
    if (state.deck.cards.empty()) return std::nullopt;
    Card drawn = state.deck.cards.front();
    state.deck.cards.erase(state.deck.cards.begin());
    hand.push_back(drawn);
    append_unknown_slot(state.knowledge, player);
    if (state.deck.cards.empty()) {
        // Last card drawn: every player gets exactly one more turn.
        state.final_round_countdown = state.n_players;
    }
    return drawn;
}

}  // namespace

Deck build_deck(std::uint64_t seed) {
    Deck deck;
    deck.rng_seed = seed;
    deck.cards.reserve(kDeckSize);
    for (Color color : all_colors()) {
        for (int rank = 1; rank <= kMaxRank; ++rank) {
            for (int copy = 0; copy < kRankCounts[rank]; ++copy) {
                deck.cards.push_back(Card{color, rank});
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = deck.cards.size() - 1; i > 0; --i) {
        std::size_t j = uniform_below(rng, i + 1);
        std::swap(deck.cards[i], deck.cards[j]);
    }
    return deck;
}

GameState new_game(int n_players, std::uint64_t seed) {
    if (n_players < 2 || n_players > 5) {
        throw InvalidPlayerCount("player count must be between 2 and 5, got " +
                                 std::to_string(n_players));
    }
    GameState state;
    state.n_players = n_players;
    state.deck = build_deck(seed);
    state.hands.assign(n_players, {});
    const int hand_size = state.hand_size();
    for (int i = 0; i < hand_size; ++i) {
        for (int p = 0; p < n_players; ++p) {
            state.hands[p].push_back(state.deck.cards.front());
            state.deck.cards.erase(state.deck.cards.begin());
        }
    }
    state.knowledge = KnowledgeMatrix::make(n_players, hand_size);
    return state;
}

std::vector<Action> legal_actions(const GameState& state, int player) {
    if (state.terminal) {
        throw GameOver("the game has ended");
    }
    if (player != state.turn_player) {
        throw NotYourTurn("it is player " + std::to_string(state.turn_player) + "'s turn");
    }
    std::vector<Action> actions;
    const auto& hand = state.hands[player];
    for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
        actions.push_back(Action::play(i));
    }
    for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
        actions.push_back(Action::discard(i));
    }
    if (state.info_tokens >= 1) {
        for (int target = 0; target < state.n_players; ++target) {
            if (target == player) continue;
            std::set<int> colors;
            std::set<int> ranks;
            for (const Card& card : state.hands[target]) {
                colors.insert(static_cast<int>(card.color));
                ranks.insert(card.rank);
            }
            for (int c : colors) {
                actions.push_back(Action::hint_color_to(target, static_cast<Color>(c)));
            }
            for (int r : ranks) {
                actions.push_back(Action::hint_rank_to(target, r));
            }
        }
    }
    return actions;
}

std::optional<EndReason> end_reason(const GameState& state) {
    if (state.life_tokens == 0) return EndReason::LivesExhausted;
    bool complete = true;
    for (int top : state.fireworks.tops) {
        if (top != kMaxRank) complete = false;
    }
    if (complete) return EndReason::AllStacksComplete;
    if (state.final_round_countdown && *state.final_round_countdown == 0) {
        return EndReason::DeckExhausted;
    }
    return std::nullopt;
}

std::pair<GameState, Outcome> apply_action(const GameState& prev, const Action& action) {
    if (prev.terminal) {
        throw IllegalAction("the game is over");
    }
    GameState state = prev;
    Outcome outcome;
    const int actor = state.turn_player;

    switch (action.kind) {
        case ActionKind::Play: {
            check_in_hand(state, action);
            const int index = *action.card_index;
            const Card card = state.hands[actor][index];
            const int top = state.fireworks.top(card.color);
            if (top == card.rank - 1) {
                state.fireworks.tops[static_cast<int>(card.color)] += 1;
                outcome.success = true;
            } else {
                state.life_tokens -= 1;
                outcome.life_delta = -1;
                state.discard_pile.push_back(card);
                outcome.success = false;
            }
            outcome.drawn = remove_and_draw(state, actor, index);
            state.history.push_back(HistoryEntry{
                state.round, actor, ActionKind::Play,
                play_history_sentence(state.round, actor, index, card, outcome.success),
                action, card, outcome.success});
            break;
        }
        case ActionKind::Discard: {
            check_in_hand(state, action);
            const int index = *action.card_index;
            const Card card = state.hands[actor][index];
            state.discard_pile.push_back(card);
            if (state.info_tokens < kMaxInfoTokens) {
                state.info_tokens += 1;
                outcome.info_delta = 1;
            }
            outcome.drawn = remove_and_draw(state, actor, index);
            state.history.push_back(HistoryEntry{
                state.round, actor, ActionKind::Discard,
                discard_history_sentence(state.round, actor, index, card),
                action, card, true});
            break;
        }
        case ActionKind::HintColor:
        case ActionKind::HintRank: {
            check_hint(state, action);
            state.info_tokens -= 1;
            outcome.info_delta = -1;
            state.knowledge =
                update_knowledge(state.knowledge, action, state.hands[*action.hint_player]);
            state.history.push_back(HistoryEntry{
                state.round, actor, action.kind,
                hint_history_sentence(state.round, actor, action),
                action, std::nullopt, true});
            break;
        }
    }

    if (state.final_round_countdown && !outcome.drawn &&
        *state.final_round_countdown > 0) {
        // A countdown started on an earlier turn ticks down with each action.
        state.final_round_countdown = *state.final_round_countdown - 1;
    }

    if (auto reason = end_reason(state)) {
        state.terminal = true;
        state.end = reason;
        outcome.terminal = true;
        outcome.reason = reason;
        return {std::move(state), outcome};
    }

    state.turn_player = (state.turn_player + 1) % state.n_players;
    if (state.turn_player == 0) {
        state.round += 1;
    }
    return {std::move(state), outcome};
}

int raw_score(const GameState& state) {
    int total = 0;
    for (int top : state.fireworks.tops) total += top;
    return total;
}

double normalized_score(const GameState& state) {
    return raw_score(state) * 4.0;
}

}  // namespace hanabench
