#pragma once

#include <optional>
#include <vector>

#include "hanabench/types.hpp"

namespace hanabench {

// What one player has been told about one of their own card slots.
// Only positive information from hints is tracked; no negative inference.
struct SlotKnowledge {
    std::optional<Color> known_color;
    std::optional<int> known_rank;

    bool fully_known() const { return known_color && known_rank; }
    bool operator==(const SlotKnowledge&) const = default;
};

// Per-player, per-slot record of hint-revealed attributes. Row p mirrors
// player p's hand: entries shift with the hand on play/discard/draw.
struct KnowledgeMatrix {
    std::vector<std::vector<SlotKnowledge>> rows;

    static KnowledgeMatrix make(int n_players, int hand_size);

    const std::vector<SlotKnowledge>& row(int player) const { return rows.at(player); }

    bool operator==(const KnowledgeMatrix&) const = default;
};

// Applies a legal hint: every slot of the recipient's hand whose card matches
// the hinted attribute gains that attribute. Non-matching slots are untouched.
KnowledgeMatrix update_knowledge(const KnowledgeMatrix& matrix, const Action& hint,
                                 const std::vector<Card>& target_hand);

// Hand-shift bookkeeping used by the engine on play/discard/draw.
void remove_slot(KnowledgeMatrix& matrix, int player, int index);
void append_unknown_slot(KnowledgeMatrix& matrix, int player);

}  // namespace hanabench
