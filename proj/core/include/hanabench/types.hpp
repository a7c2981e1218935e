#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hanabench {

enum class Color : int { Red = 0, Yellow, Green, Blue, White };

inline constexpr int kNumColors = 5;
inline constexpr int kMaxRank = 5;
inline constexpr int kDeckSize = 50;
inline constexpr int kMaxInfoTokens = 8;
inline constexpr int kMaxLifeTokens = 3;

// Copies of each rank in a single color: three 1s, two each of 2-4, one 5.
inline constexpr std::array<int, kMaxRank + 1> kRankCounts = {0, 3, 2, 2, 2, 1};

constexpr std::array<Color, kNumColors> all_colors() {
    return {Color::Red, Color::Yellow, Color::Green, Color::Blue, Color::White};
}

std::string color_name(Color c);                 // "red", "yellow", ...
std::string color_name_upper(Color c);           // "RED", ...
std::optional<Color> parse_color(std::string_view s);  // case-insensitive

struct Card {
    Color color;
    int rank;  // 1..5

    bool operator==(const Card&) const = default;
};

// "('yellow', 2)" -- the tuple form used across views and history lines.
std::string card_tuple(const Card& c);

enum class ActionKind : int { Play = 0, Discard, HintColor, HintRank };

std::string action_kind_name(ActionKind k);  // "PLAY", "DISCARD", "HINT_COLOR", "HINT_RANK"

struct Action {
    ActionKind kind;
    std::optional<int> card_index;     // Play/Discard
    std::optional<int> hint_player;    // hints
    std::optional<Color> hint_color;   // HintColor
    std::optional<int> hint_rank;      // HintRank, 1..5

    static Action play(int index) { return {ActionKind::Play, index, {}, {}, {}}; }
    static Action discard(int index) { return {ActionKind::Discard, index, {}, {}, {}}; }
    static Action hint_color_to(int player, Color c) {
        return {ActionKind::HintColor, {}, player, c, {}};
    }
    static Action hint_rank_to(int player, int rank) {
        return {ActionKind::HintRank, {}, player, {}, rank};
    }

    bool is_hint() const { return kind == ActionKind::HintColor || kind == ActionKind::HintRank; }

    bool operator==(const Action&) const = default;
};

// Stable ordering so legal-action sets can be compared against oracles.
bool operator<(const Action& a, const Action& b);

enum class EndReason : int { AllStacksComplete = 0, DeckExhausted, LivesExhausted };

std::string end_reason_name(EndReason r);

struct HistoryEntry {
    int round = 0;
    int actor = 0;
    ActionKind kind = ActionKind::Play;
    std::string text;             // fixed-template sentence, see observation
    Action action;                // structured copy
    std::optional<Card> card;     // the card played/discarded
    bool success = false;         // play outcome
};

// What apply_action reports back to the caller.
struct Outcome {
    bool success = true;          // false only for misplays
    int info_delta = 0;
    int life_delta = 0;
    std::optional<Card> drawn;
    bool terminal = false;
    std::optional<EndReason> reason;
};

}  // namespace hanabench
