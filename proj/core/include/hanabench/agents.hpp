#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hanabench/engine.hpp"
#include "hanabench/llm_client.hpp"
#include "hanabench/prompts.hpp"

namespace hanabench {

// The seven-field reply schema: an action plus the free-text reasoning slots.
// Inapplicable text fields carry the literal string "N/A".
struct ActionRecord {
    ActionKind kind = ActionKind::Play;
    std::optional<int> card_index;
    std::optional<int> hint_player;
    std::optional<Color> hint_color;
    std::optional<int> hint_rank;
    std::string rationale = "N/A";
    std::string first_order_tom = "N/A";
    std::string second_order_tom = "N/A";

    Action to_action() const;
    nlohmann::ordered_json to_json() const;  // schema key names, N/A included
};

struct AgentReply {
    std::string raw_text;
    std::optional<ActionRecord> parsed;
    std::optional<std::string> parse_error;
};

// Extracts the last syntactically valid JSON object in the reply (chain of
// thought precedes it), coerces "N/A"/null, canonicalizes colors to lowercase
// and ranks to 1-5 (a rank of 0 is read as the zero-based spelling of rank 1).
// Throws NoJsonFound, SchemaMismatch, or ValueOutOfRange.
ActionRecord parse_reply(const std::string& raw);

struct AgentTurn {
    Action action;
    ActionRecord record;
    AgentReply reply;
    int retries = 0;      // extra model calls beyond the first
    bool fallback = false;
};

class Agent {
public:
    virtual ~Agent() = default;
    virtual std::string name() const = 0;
    // Total: always returns a legal action.
    virtual AgentTurn act(const GameState& state, int player, const PromptBundle& prompt,
                          const std::vector<Action>& legal) = 0;
};

// Uniformly random legal move; seeded, so runs replay exactly.
class RandomLegalAgent : public Agent {
public:
    explicit RandomLegalAgent(std::uint64_t seed) : rng_(seed) {}
    std::string name() const override { return "random"; }
    AgentTurn act(const GameState& state, int player, const PromptBundle& prompt,
                  const std::vector<Action>& legal) override;

private:
    std::mt19937_64 rng_;
};

// Convention bot: plays a card its knowledge proves playable, otherwise hints
// the next playable card in a teammate's hand, otherwise discards its oldest.
class GreedyHintAgent : public Agent {
public:
    std::string name() const override { return "greedy"; }
    AgentTurn act(const GameState& state, int player, const PromptBundle& prompt,
                  const std::vector<Action>& legal) override;
};

// Drives a chat model: prompt in, JSON action out, with bounded re-prompting
// on parse failures or illegal actions and a deterministic fallback after that.
class LlmAgent : public Agent {
public:
    LlmAgent(std::shared_ptr<ChatClient> client, ModelConfig config, int action_retries = 3)
        : client_(std::move(client)), config_(std::move(config)),
          action_retries_(action_retries) {}

    std::string name() const override { return config_.model_name; }
    AgentTurn act(const GameState& state, int player, const PromptBundle& prompt,
                  const std::vector<Action>& legal) override;

private:
    std::shared_ptr<ChatClient> client_;
    ModelConfig config_;
    int action_retries_;  // total model attempts before falling back
};

// Templated reasoning strings shared by the scripted agents and the mock
// model, so offline runs exercise the full ledger/judge pipeline. The
// first-order statement is reconstructed from the hints the player received
// since their previous turn (the trailing history window).
std::string scripted_hint_rationale(const Action& hint);
std::string scripted_second_order(const Action& hint);
std::string scripted_first_order(const GameState& state, int player);
// Shared sentence shape; subject is "YELLOW" or "RANK 2".
std::string first_order_statement(int hinter, const std::string& subject);

}  // namespace hanabench
