#pragma once

// Shared test helpers: independent oracles and generators. Everything here
// re-derives expectations from the rule text directly, never through the
// engine's own code paths.

#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "hanabench/agents.hpp"
#include "hanabench/engine.hpp"
#include "hanabench/observation.hpp"
#include "hanabench/prompts.hpp"
#include "hanabench/tom_ledger.hpp"

namespace testsupport {

using namespace hanabench;

// Brute-force legality oracle: enumerate the whole action grammar and keep
// what the rule text allows. Independent of engine::legal_actions.
inline std::set<Action> oracle_legal_actions(const GameState& s, int player) {
    std::set<Action> out;
    const int hand = static_cast<int>(s.hands[player].size());
    for (int i = 0; i < 5; ++i) {
        if (i < hand) {
            out.insert(Action::play(i));
            out.insert(Action::discard(i));
        }
    }
    if (s.info_tokens >= 1) {
        for (int target = 0; target < s.n_players; ++target) {
            if (target == player) continue;  // you cannot hint yourself
            for (Color c : all_colors()) {
                bool present = false;
                for (const Card& card : s.hands[target]) {
                    if (card.color == c) present = true;
                }
                if (present) out.insert(Action::hint_color_to(target, c));
            }
            for (int r = 1; r <= 5; ++r) {
                bool present = false;
                for (const Card& card : s.hands[target]) {
                    if (card.rank == r) present = true;
                }
                if (present) out.insert(Action::hint_rank_to(target, r));
            }
        }
    }
    return out;
}

// A synthetic mid-game state built directly from the card multiset, without
// running the engine: conservation holds by construction.
inline GameState random_state(std::mt19937_64& rng) {
    GameState s;
    s.n_players = 2 + static_cast<int>(rng() % 4);

    std::vector<Card> pool;
    for (Color c : all_colors()) {
        for (int rank = 1; rank <= kMaxRank; ++rank) {
            for (int copy = 0; copy < kRankCounts[rank]; ++copy) {
                pool.push_back(Card{c, rank});
            }
        }
    }

    // Random fireworks; stacked cards leave the pool (one of each rank).
    for (Color c : all_colors()) {
        const int top = static_cast<int>(rng() % 6);
        s.fireworks.tops[static_cast<int>(c)] = top;
        for (int rank = 1; rank <= top; ++rank) {
            for (auto it = pool.begin(); it != pool.end(); ++it) {
                if (it->color == c && it->rank == rank) {
                    pool.erase(it);
                    break;
                }
            }
        }
    }

    for (std::size_t i = pool.size() - 1; i > 0; --i) {
        std::swap(pool[i], pool[rng() % (i + 1)]);
    }

    const int hand_size = s.n_players;
    s.hands.assign(s.n_players, {});
    for (int p = 0; p < s.n_players; ++p) {
        for (int i = 0; i < hand_size; ++i) {
            s.hands[p].push_back(pool.back());
            pool.pop_back();
        }
    }

    const std::size_t discards = rng() % (pool.size() + 1);
    for (std::size_t i = 0; i < discards; ++i) {
        s.discard_pile.push_back(pool.back());
        pool.pop_back();
    }
    s.deck.cards = std::move(pool);

    s.info_tokens = static_cast<int>(rng() % 9);
    s.life_tokens = 1 + static_cast<int>(rng() % 3);
    s.turn_player = static_cast<int>(rng() % s.n_players);
    s.round = 1 + static_cast<int>(rng() % 20);
    s.knowledge = KnowledgeMatrix::make(s.n_players, hand_size);
    if (s.deck.cards.empty()) {
        s.final_round_countdown = 1 + static_cast<int>(rng() % s.n_players);
    }
    return s;
}

// 50-card conservation across deck, hands, discard pile, and stacks.
inline bool cards_conserved(const GameState& s) {
    std::size_t total = s.deck.cards.size() + s.discard_pile.size();
    for (const auto& hand : s.hands) total += hand.size();
    for (int top : s.fireworks.tops) total += static_cast<std::size_t>(top);
    return total == kDeckSize;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct OfflineGame {
    GameState state;
    ToMLedger ledger;
    int turns = 0;
};

// The full per-turn pipeline (view -> prompt -> act -> apply -> ledger)
// without transcript files, for property tests over many games. Optional
// per-transition hook observes every state change.
template <typename Hook>
OfflineGame play_offline(int n_players, std::uint64_t seed,
                         std::vector<std::unique_ptr<Agent>>& agents, Hook&& hook) {
    OfflineGame game{new_game(n_players, seed), ToMLedger("offline", n_players), 0};
    GameState& state = game.state;
    while (!state.terminal) {
        const int player = state.turn_player;
        const int round = state.round;
        const ObservationView view = render_view(state, player);
        const auto pending = game.ledger.pending_for(player);
        const PromptBundle bundle = build_turn_prompt(view, player, n_players, pending);
        const auto legal = legal_actions(state, player);
        const AgentTurn turn = agents[player]->act(state, player, bundle, legal);
        auto [next, outcome] = apply_action(state, turn.action);
        if (turn.record.first_order_tom != "N/A") {
            game.ledger.attach_first_order(player, turn.record.first_order_tom);
        } else if (!pending.empty()) {
            game.ledger.expire_pending(player);
        }
        if (turn.action.is_hint()) {
            game.ledger.record_hint(round, player, turn.action, turn.record.rationale,
                                    turn.record.second_order_tom);
        }
        hook(next, outcome, turn);
        state = std::move(next);
        game.turns += 1;
    }
    return game;
}

inline OfflineGame play_offline(int n_players, std::uint64_t seed,
                                std::vector<std::unique_ptr<Agent>>& agents) {
    return play_offline(n_players, seed, agents,
                        [](const GameState&, const Outcome&, const AgentTurn&) {});
}

inline std::vector<std::unique_ptr<Agent>> greedy_seats(int n) {
    std::vector<std::unique_ptr<Agent>> agents;
    for (int i = 0; i < n; ++i) agents.push_back(std::make_unique<GreedyHintAgent>());
    return agents;
}

inline std::vector<std::unique_ptr<Agent>> random_seats(int n, std::uint64_t seed) {
    std::vector<std::unique_ptr<Agent>> agents;
    for (int i = 0; i < n; ++i) {
        agents.push_back(std::make_unique<RandomLegalAgent>(seed * 1000003ull + i));
    }
    return agents;
}

}  // namespace testsupport
