#include "hanabench/types.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace hanabench {

std::string color_name(Color c) {
    switch (c) {
        case Color::Red: return "red";
        case Color::Yellow: return "yellow";
        case Color::Green: return "green";
        case Color::Blue: return "blue";
        case Color::White: return "white";
    }
    return "?";
}

std::string color_name_upper(Color c) {
    std::string s = color_name(c);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char ch) { return std::toupper(ch); });
    return s;
}

std::optional<Color> parse_color(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    for (Color c : all_colors()) {
        if (lower == color_name(c)) return c;
    }
    return std::nullopt;
}

std::string card_tuple(const Card& c) {
    return "('" + color_name(c.color) + "', " + std::to_string(c.rank) + ")";
}

std::string action_kind_name(ActionKind k) {
    switch (k) {
        case ActionKind::Play: return "PLAY";
        case ActionKind::Discard: return "DISCARD";
        case ActionKind::HintColor: return "HINT_COLOR";
        case ActionKind::HintRank: return "HINT_RANK";
    }
    return "?";
}

std::string end_reason_name(EndReason r) {
    switch (r) {
        case EndReason::AllStacksComplete: return "all_stacks_complete";
        case EndReason::DeckExhausted: return "deck_exhausted";
        case EndReason::LivesExhausted: return "lives_exhausted";
    }
    return "?";
}

bool operator<(const Action& a, const Action& b) {
    auto key = [](const Action& x) {
        return std::make_tuple(static_cast<int>(x.kind), x.card_index.value_or(-1),
                               x.hint_player.value_or(-1),
                               x.hint_color ? static_cast<int>(*x.hint_color) : -1,
                               x.hint_rank.value_or(-1));
    };
    return key(a) < key(b);
}

}  // namespace hanabench
