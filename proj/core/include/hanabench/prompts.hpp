#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hanabench/observation.hpp"
#include "hanabench/tom_ledger.hpp"

namespace hanabench {

struct PromptBundle {
    std::string rules_text;
    std::string turn_prompt;  // rules + state + action schema + example (+ addendum)
    std::optional<std::string> hinted_addendum;
};

// The fixed game-rules text shown to every agent.
const std::string& hanabi_rules_text();

// Assembles the full turn prompt for one player. When pending_hints is
// nonempty the first-order ToM addendum recites each hint received since the
// player's last turn and asks for an interpretation.
PromptBundle build_turn_prompt(const ObservationView& view, int player, int n_players,
                               const std::vector<HintEvent>& pending_hints);

// Rubric prompt for one judge call. Axis 1 compares the hinter's rationale
// with the recipient's interpretation; axis 2 compares the recipient's
// interpretation with the hinter's prediction.
std::string build_judge_prompt(int axis, const std::string& text_a, const std::string& text_b);

// Simple {placeholder} substitution used by the template assembly.
std::string substitute(std::string text, const std::string& key, const std::string& value);

}  // namespace hanabench
