#include "hanabench/mock_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

#include "hanabench/agents.hpp"
#include "hanabench/types.hpp"
#include "json_extract.hpp"

namespace hanabench {

namespace {

struct ParsedCard {
    std::optional<Color> color;
    std::optional<int> rank;
};

// Parses "[('?', '?'), ('yellow', 2), ...]" into attribute pairs.
std::vector<ParsedCard> parse_tuple_list(const std::string& text) {
    std::vector<ParsedCard> cards;
    static const std::regex tuple_re(R"(\('([a-z?]+)', (?:'(\?)'|(\d))\))");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), tuple_re);
         it != std::sregex_iterator(); ++it) {
        ParsedCard card;
        const std::string color_word = (*it)[1].str();
        if (color_word != "?") card.color = parse_color(color_word);
        if ((*it)[3].matched) card.rank = std::stoi((*it)[3].str());
        cards.push_back(card);
    }
    return cards;
}

struct PromptState {
    int player_id = 0;
    int n_players = 0;
    std::array<int, kNumColors> tops{};
    int info_tokens = 0;
    std::vector<ParsedCard> own;                    // hinted knowledge only
    std::vector<std::pair<int, std::vector<ParsedCard>>> others;  // visible hands
    std::optional<std::pair<int, std::string>> last_hint;  // (hinter, subject)
};

std::optional<PromptState> read_prompt(const std::string& prompt) {
    PromptState ps;

    static const std::regex id_re(R"(Your player_id is (\d+)\(count from 0\))");
    static const std::regex others_re(R"(with other (\d+) players)");
    std::smatch m;
    if (!std::regex_search(prompt, m, id_re)) return std::nullopt;
    ps.player_id = std::stoi(m[1].str());
    if (!std::regex_search(prompt, m, others_re)) return std::nullopt;
    ps.n_players = std::stoi(m[1].str()) + 1;

    // The state dictionary is the last JSON object before "Now is your turn".
    const auto cut = prompt.find("Now is your turn");
    if (cut == std::string::npos) return std::nullopt;
    const auto state_json = detail::extract_last_json_object(prompt.substr(0, cut));
    if (!state_json) return std::nullopt;
    const auto& state = *state_json;

    for (Color c : all_colors()) {
        ps.tops[static_cast<int>(c)] =
            state["fireworks"]["content"].value(color_name(c), 0);
    }
    ps.info_tokens = state["information_tokens"]["content"].get<int>();

    const auto& knowledge = state["knowledge"]["content"];
    ps.own = parse_tuple_list(knowledge.value("The cards in your own hands", ""));
    for (int p = 0; p < ps.n_players; ++p) {
        if (p == ps.player_id) continue;
        const std::string key =
            "The cards in Player_id " + std::to_string(p) + "'s hands from your view";
        if (knowledge.contains(key)) {
            ps.others.emplace_back(p, parse_tuple_list(knowledge[key].get<std::string>()));
        }
    }

    static const std::regex hint_re(
        R"(The player (\d+) hinted you about your (RANK \d|[A-Z]+) card\(s\)\.)");
    for (auto it = std::sregex_iterator(prompt.begin(), prompt.end(), hint_re);
         it != std::sregex_iterator(); ++it) {
        ps.last_hint = {std::stoi((*it)[1].str()), (*it)[2].str()};
    }
    return ps;
}

ActionRecord decide(const PromptState& ps) {
    ActionRecord record;

    // Play a card our hinted knowledge proves playable.
    for (std::size_t i = 0; i < ps.own.size(); ++i) {
        const ParsedCard& card = ps.own[i];
        if (!card.rank) continue;
        if (card.color) {
            if (ps.tops[static_cast<int>(*card.color)] == *card.rank - 1) {
                record.kind = ActionKind::Play;
                record.card_index = static_cast<int>(i);
                return record;
            }
        } else {
            bool safe_for_all = true;
            for (int top : ps.tops) {
                if (top != *card.rank - 1) safe_for_all = false;
            }
            if (safe_for_all) {
                record.kind = ActionKind::Play;
                record.card_index = static_cast<int>(i);
                return record;
            }
        }
    }

    // Hint the nearest teammate's playable card by rank.
    if (ps.info_tokens >= 1) {
        for (int step = 1; step < ps.n_players; ++step) {
            const int target = (ps.player_id + step) % ps.n_players;
            for (const auto& [p, hand] : ps.others) {
                if (p != target) continue;
                for (const ParsedCard& card : hand) {
                    if (!card.color || !card.rank) continue;
                    if (ps.tops[static_cast<int>(*card.color)] == *card.rank - 1) {
                        record.kind = ActionKind::HintRank;
                        record.hint_player = target;
                        record.hint_rank = *card.rank;
                        return record;
                    }
                }
            }
        }
    }

    record.kind = ActionKind::Discard;
    record.card_index = 0;
    return record;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::set<std::string> word_set(const std::string& text) {
    std::set<std::string> words;
    std::string current;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            words.insert(current);
            current.clear();
        }
    }
    if (!current.empty()) words.insert(current);
    return words;
}

}  // namespace

MockChatClient::Handler make_mock_player_handler() {
    return [](const std::vector<ChatMessage>& messages) -> std::string {
        // Feedback in the conversation means our previous pick was rejected;
        // discard the oldest card, which is always safe.
        if (messages.size() > 1) {
            ActionRecord record;
            record.kind = ActionKind::Discard;
            record.card_index = 0;
            return "Falling back to a safe discard.\n\n" + record.to_json().dump();
        }

        const std::string& prompt = messages.front().content;
        const auto ps = read_prompt(prompt);
        if (!ps) {
            ActionRecord record;
            record.kind = ActionKind::Discard;
            record.card_index = 0;
            return record.to_json().dump();
        }

        ActionRecord record = decide(*ps);
        if (record.kind == ActionKind::HintRank) {
            const Action action = record.to_action();
            record.rationale = scripted_hint_rationale(action);
            record.second_order_tom = scripted_second_order(action);
        }
        if (ps->last_hint) {
            record.first_order_tom =
                first_order_statement(ps->last_hint->first, ps->last_hint->second);
        }

        std::ostringstream reply;
        reply << "Let me look at the fireworks, my own hinted knowledge, and the other "
                 "players' hands before acting.\n";
        switch (record.kind) {
            case ActionKind::Play:
                reply << "My card at index " << *record.card_index
                      << " is provably playable, so I will play it.\n";
                break;
            case ActionKind::HintRank:
                reply << "Player " << *record.hint_player
                      << " holds a playable card; I will hint its rank.\n";
                break;
            default:
                reply << "Nothing is provably playable and no hint is worth a token, so I "
                         "will discard my oldest card.\n";
                break;
        }
        reply << "\n" << record.to_json().dump();
        return reply.str();
    };
}

MockChatClient::Handler make_mock_judge_handler() {
    return [](const std::vector<ChatMessage>& messages) -> std::string {
        const std::string& prompt = messages.back().content;
        static const std::regex statement_re(
            R"(Statement A \([^)]*\):\n([\s\S]*?)\n\nStatement B \([^)]*\):\n([\s\S]*?)\n\nScore)");
        std::smatch m;
        if (!std::regex_search(prompt, m, statement_re)) {
            return R"({"score": 0, "justification": "statements not found"})";
        }
        const auto a = word_set(m[1].str());
        const auto b = word_set(m[2].str());
        std::size_t inter = 0;
        for (const auto& w : a) {
            inter += b.count(w);
        }
        const std::size_t uni = a.size() + b.size() - inter;
        const double jaccard = uni == 0 ? (lower(m[1].str()) == lower(m[2].str()) ? 1.0 : 0.0)
                                        : static_cast<double>(inter) / static_cast<double>(uni);
        const int score = static_cast<int>(std::lround(jaccard * 10.0));
        nlohmann::json j{{"score", score},
                         {"justification", "word overlap " +
                                               std::to_string(static_cast<int>(jaccard * 100)) +
                                               "% between the two statements"}};
        return j.dump();
    };
}

}  // namespace hanabench
