#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hanabench/types.hpp"

namespace hanabench {

enum class HintStatus : int {
    Pending = 0,  // awaiting the recipient's next turn
    Paired,       // first-order statement attached
    Expired,      // superseded by a newer hint, or recipient never responded
    Flagged,      // hint arrived without rationale/second-order text
};

std::string hint_status_name(HintStatus s);

// One hint interaction: the hinter's rationale and second-order prediction at
// emission time, later paired with the recipient's first-order interpretation.
struct HintEvent {
    std::uint64_t id = 0;
    std::string game_id;
    int round = 0;
    int hinter = 0;
    int recipient = 0;
    ActionKind kind = ActionKind::HintColor;
    std::optional<Color> hint_color;
    std::optional<int> hint_rank;
    std::string rationale;
    std::string second_order_tom;
    std::optional<std::string> first_order_tom;
    HintStatus status = HintStatus::Pending;

    bool paired() const { return status == HintStatus::Paired; }
    // "your YELLOW card(s)" / "your RANK 2 card(s)"
    std::string subject_text() const;
};

struct LedgerCounts {
    int emitted = 0;
    int paired = 0;
    int expired = 0;
    int flagged = 0;
    int pending = 0;
    int orphan_statements = 0;
};

// Per-game record of hint interactions. Sequential with the game loop.
class ToMLedger {
public:
    explicit ToMLedger(std::string game_id, int n_players)
        : game_id_(std::move(game_id)), pending_(n_players) {}

    // Records a hint at emission. Missing rationale/second-order text flags
    // the event (kept for auditability, excluded from scoring and pairing).
    HintEvent& record_hint(int round, int hinter, const Action& action,
                           const std::string& rationale, const std::string& second_order_tom);

    // Events awaiting this recipient, oldest first.
    std::vector<HintEvent> pending_for(int recipient) const;

    // Attaches the statement to the most recent pending hint; older pending
    // hints for the recipient expire. Returns every event that changed.
    // With no pending hint the statement is logged as an orphan.
    std::vector<HintEvent> attach_first_order(int recipient, const std::string& statement);

    // The recipient acted without giving a first-order statement.
    void expire_pending(int recipient);

    const std::vector<HintEvent>& events() const { return events_; }
    const std::vector<std::string>& orphan_statements() const { return orphans_; }
    LedgerCounts counts() const;

private:
    std::string game_id_;
    std::vector<HintEvent> events_;
    std::vector<std::vector<std::size_t>> pending_;  // per recipient, event indices
    std::vector<std::string> orphans_;
};

}  // namespace hanabench
