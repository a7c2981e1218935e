#include "hanabench/prompts.hpp"

#include <stdexcept>

#include "embedded_templates.inc"

namespace hanabench {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    const std::string token = "{" + key + "}";
    std::size_t pos = 0;
    while ((pos = text.find(token, pos)) != std::string::npos) {
        text.replace(pos, token.size(), value);
        pos += value.size();
    }
    return text;
}

const std::string& hanabi_rules_text() {
    static const std::string rules = [] {
        std::string s = kHanabiRulesText;
        while (!s.empty() && s.back() == '\n') s.pop_back();
        return s;
    }();
    return rules;
}

PromptBundle build_turn_prompt(const ObservationView& view, int player, int n_players,
                               const std::vector<HintEvent>& pending_hints) {
    PromptBundle bundle;
    bundle.rules_text = hanabi_rules_text();

    std::string prompt = kGeneralPromptTemplate;
    prompt = substitute(std::move(prompt), "hanabi_rules", bundle.rules_text);
    prompt = substitute(std::move(prompt), "num_other_players", std::to_string(n_players - 1));
    prompt = substitute(std::move(prompt), "player_id", std::to_string(player));
    prompt = substitute(std::move(prompt), "game_state", view.text());
    prompt = substitute(std::move(prompt), "max_card_index", std::to_string(view.hand_size - 1));
    prompt = substitute(std::move(prompt), "num_players_minus_1", std::to_string(n_players - 1));

    if (!pending_hints.empty()) {
        std::string lines;
        for (const HintEvent& hint : pending_hints) {
            lines += "    The player " + std::to_string(hint.hinter) + " hinted you about " +
                     hint.subject_text() + ".\n";
        }
        if (!lines.empty()) lines.pop_back();
        std::string addendum = kHintedAddendumTemplate;
        addendum = substitute(std::move(addendum), "hint_lines", lines);
        while (!addendum.empty() && addendum.back() == '\n') addendum.pop_back();
        bundle.hinted_addendum = addendum;
        prompt += "\n\n" + addendum;
    }
    bundle.turn_prompt = std::move(prompt);
    return bundle;
}

std::string build_judge_prompt(int axis, const std::string& text_a, const std::string& text_b) {
    std::string framing;
    std::string label_a;
    std::string label_b;
    if (axis == 1) {
        framing =
            "Statement A is the hint giver's private rationale for the hint. Statement B is "
            "the hint recipient's stated interpretation of why they were hinted. You are "
            "measuring whether the recipient correctly inferred the hinter's intent.";
        label_a = "the hinter's rationale";
        label_b = "the recipient's interpretation";
    } else if (axis == 2) {
        framing =
            "Statement A is the hint recipient's stated interpretation of the hint. "
            "Statement B is the hint giver's prediction of how the recipient would interpret "
            "it. You are measuring whether the hinter correctly predicted the recipient's "
            "interpretation.";
        label_a = "the recipient's interpretation";
        label_b = "the hinter's prediction";
    } else {
        throw std::invalid_argument("judge axis must be 1 or 2");
    }
    std::string prompt = kJudgeRubricTemplate;
    prompt = substitute(std::move(prompt), "axis_framing", framing);
    prompt = substitute(std::move(prompt), "label_a", label_a);
    prompt = substitute(std::move(prompt), "label_b", label_b);
    prompt = substitute(std::move(prompt), "text_a", text_a);
    prompt = substitute(std::move(prompt), "text_b", text_b);
    while (!prompt.empty() && prompt.back() == '\n') prompt.pop_back();
    return prompt;
}

}  // namespace hanabench
