#include "hanabench/knowledge.hpp"

#include <cassert>

namespace hanabench {

KnowledgeMatrix KnowledgeMatrix::make(int n_players, int hand_size) {
    KnowledgeMatrix m;
    m.rows.assign(n_players, std::vector<SlotKnowledge>(hand_size));
    return m;
}

KnowledgeMatrix update_knowledge(const KnowledgeMatrix& matrix, const Action& hint,
                                 const std::vector<Card>& target_hand) {
    KnowledgeMatrix out = matrix;
    auto& row = out.rows.at(static_cast<std::size_t>(*hint.hint_player));
    assert(row.size() == target_hand.size());
    for (std::size_t i = 0; i < target_hand.size(); ++i) {
        const Card& card = target_hand[i];
        if (hint.kind == ActionKind::HintColor && card.color == *hint.hint_color) {
            row[i].known_color = card.color;
        } else if (hint.kind == ActionKind::HintRank && card.rank == *hint.hint_rank) {
            row[i].known_rank = card.rank;
        }
    }
    return out;
}

void remove_slot(KnowledgeMatrix& matrix, int player, int index) {
    auto& row = matrix.rows.at(static_cast<std::size_t>(player));
    row.erase(row.begin() + index);
}

void append_unknown_slot(KnowledgeMatrix& matrix, int player) {
    matrix.rows.at(static_cast<std::size_t>(player)).push_back(SlotKnowledge{});
}

}  // namespace hanabench
