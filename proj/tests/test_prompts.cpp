#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hanabench/observation.hpp"
#include "hanabench/prompts.hpp"

using namespace hanabench;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

HintEvent make_hint(int hinter, int recipient, ActionKind kind, Color color, int rank) {
    HintEvent e;
    e.hinter = hinter;
    e.recipient = recipient;
    e.kind = kind;
    if (kind == ActionKind::HintColor) {
        e.hint_color = color;
    } else {
        e.hint_rank = rank;
    }
    return e;
}

}  // namespace

TEST_CASE("general prompt without pending hints") {
    const GameState s = new_game(5, 42);
    const ObservationView view = render_view(s, 0);
    const PromptBundle bundle = build_turn_prompt(view, 0, 5, {});

    CHECK_FALSE(bundle.hinted_addendum.has_value());
    CHECK(count_occurrences(bundle.turn_prompt, bundle.rules_text) == 1);
    CHECK(bundle.turn_prompt.find("You are playing hanabi game collectively with other 4 "
                                  "players. Your player_id is 0(count from 0).") !=
          std::string::npos);
    // schema spans substituted for a 5-player game
    CHECK(count_occurrences(bundle.turn_prompt,
                            "\"hint_player\": an integer from 0 to 4") == 1);
    CHECK(count_occurrences(bundle.turn_prompt,
                            "\"card_index\": an integer from 0 to 4") == 1);
    // every schema key appears
    for (const char* key : {"action_type", "card_index", "hint_player", "hint_color",
                            "hint_rank", "rationale", "1st_order_ToM", "2nd_order_ToM"}) {
        CHECK(bundle.turn_prompt.find(key) != std::string::npos);
    }
    // the state dictionary is embedded
    CHECK(bundle.turn_prompt.find(view.text()) != std::string::npos);
    CHECK(bundle.turn_prompt.find("The following is the most recent hint") ==
          std::string::npos);
}

TEST_CASE("player id and spans track the configuration") {
    const GameState s = new_game(3, 9);
    const ObservationView view = render_view(s, 2);
    const PromptBundle bundle = build_turn_prompt(view, 2, 3, {});
    CHECK(bundle.turn_prompt.find("with other 2 players") != std::string::npos);
    CHECK(bundle.turn_prompt.find("Your player_id is 2(count from 0)") != std::string::npos);
    CHECK(bundle.turn_prompt.find("\"hint_player\": an integer from 0 to 2") !=
          std::string::npos);
    CHECK(bundle.turn_prompt.find("\"card_index\": an integer from 0 to 2") !=
          std::string::npos);
}

TEST_CASE("hinted addendum recites the hint") {
    const GameState s = new_game(5, 42);
    const ObservationView view = render_view(s, 2);
    const auto hint = make_hint(3, 2, ActionKind::HintColor, Color::Yellow, 0);
    const PromptBundle bundle = build_turn_prompt(view, 2, 5, {hint});

    REQUIRE(bundle.hinted_addendum.has_value());
    CHECK(bundle.hinted_addendum->find("The following is the most recent hint you received:") !=
          std::string::npos);
    CHECK(bundle.hinted_addendum->find(
              "    The player 3 hinted you about your YELLOW card(s).") != std::string::npos);
    CHECK(bundle.hinted_addendum->find("this/these hint(s)") != std::string::npos);
    // the addendum rides at the end of the turn prompt
    CHECK(bundle.turn_prompt.find(*bundle.hinted_addendum) != std::string::npos);
}

TEST_CASE("multiple pending hints are all recited") {
    const GameState s = new_game(5, 42);
    const ObservationView view = render_view(s, 1);
    const auto first = make_hint(0, 1, ActionKind::HintRank, Color::Red, 2);
    const auto second = make_hint(4, 1, ActionKind::HintColor, Color::White, 0);
    const PromptBundle bundle = build_turn_prompt(view, 1, 5, {first, second});

    REQUIRE(bundle.hinted_addendum.has_value());
    CHECK(bundle.hinted_addendum->find("The player 0 hinted you about your RANK 2 card(s).") !=
          std::string::npos);
    CHECK(bundle.hinted_addendum->find("The player 4 hinted you about your WHITE card(s).") !=
          std::string::npos);
    // one first-order statement requested, not one per hint
    CHECK(count_occurrences(*bundle.hinted_addendum,
                            "you should show your 1st order Theory-of-Mind(ToM)") == 1);
}

TEST_CASE("prompt assembly is deterministic") {
    const GameState s = new_game(4, 1234);
    const ObservationView view = render_view(s, 3);
    const auto hint = make_hint(1, 3, ActionKind::HintRank, Color::Red, 4);
    const PromptBundle a = build_turn_prompt(view, 3, 4, {hint});
    const PromptBundle b = build_turn_prompt(view, 3, 4, {hint});
    CHECK(a.turn_prompt == b.turn_prompt);
    CHECK(a.rules_text == b.rules_text);
    CHECK(a.hinted_addendum == b.hinted_addendum);
}

TEST_CASE("rules text carries the core rule lines") {
    const std::string& rules = hanabi_rules_text();
    CHECK(rules.find("50 cards in total") != std::string::npos);
    CHECK(rules.find("you cannot hint yourself") != std::string::npos);
    CHECK(rules.find("Spend an information token each time you hint.") != std::string::npos);
    CHECK(rules.find("Total score = sum of the largest rank of five firework stacks") !=
          std::string::npos);
}

TEST_CASE("judge rubric presents both statements and the anchors") {
    const std::string prompt = build_judge_prompt(1, "alpha beta", "gamma delta");
    CHECK(prompt.find("alpha beta") != std::string::npos);
    CHECK(prompt.find("gamma delta") != std::string::npos);
    CHECK(prompt.find("0 to 10") != std::string::npos);
    CHECK(prompt.find("identical meaning") != std::string::npos);
    CHECK(prompt.find("\"score\"") != std::string::npos);

    const std::string second = build_judge_prompt(2, "alpha", "beta");
    CHECK(second.find("prediction") != std::string::npos);
    CHECK(prompt != second);
}
