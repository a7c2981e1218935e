#include "hanabench/tom_ledger.hpp"

namespace hanabench {

std::string hint_status_name(HintStatus s) {
    switch (s) {
        case HintStatus::Pending: return "pending";
        case HintStatus::Paired: return "paired";
        case HintStatus::Expired: return "expired";
        case HintStatus::Flagged: return "flagged";
    }
    return "?";
}

std::string HintEvent::subject_text() const {
    if (kind == ActionKind::HintColor) {
        return "your " + color_name_upper(*hint_color) + " card(s)";
    }
    return "your RANK " + std::to_string(*hint_rank) + " card(s)";
}

HintEvent& ToMLedger::record_hint(int round, int hinter, const Action& action,
                                  const std::string& rationale,
                                  const std::string& second_order_tom) {
    HintEvent event;
    event.id = events_.size();
    event.game_id = game_id_;
    event.round = round;
    event.hinter = hinter;
    event.recipient = *action.hint_player;
    event.kind = action.kind;
    event.hint_color = action.hint_color;
    event.hint_rank = action.hint_rank;

    const bool missing = rationale.empty() || rationale == "N/A" ||
                         second_order_tom.empty() || second_order_tom == "N/A";
    if (missing) {
        event.status = HintStatus::Flagged;
    } else {
        event.rationale = rationale;
        event.second_order_tom = second_order_tom;
        event.status = HintStatus::Pending;
    }
    events_.push_back(std::move(event));
    if (events_.back().status == HintStatus::Pending) {
        pending_[events_.back().recipient].push_back(events_.size() - 1);
    }
    return events_.back();
}

std::vector<HintEvent> ToMLedger::pending_for(int recipient) const {
    std::vector<HintEvent> out;
    for (std::size_t idx : pending_[recipient]) {
        out.push_back(events_[idx]);
    }
    return out;
}

std::vector<HintEvent> ToMLedger::attach_first_order(int recipient,
                                                     const std::string& statement) {
    auto& queue = pending_[recipient];
    if (queue.empty()) {
        orphans_.push_back(statement);
        return {};
    }
    std::vector<HintEvent> changed;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        HintEvent& event = events_[queue[i]];
        if (i + 1 == queue.size()) {
            event.first_order_tom = statement;
            event.status = HintStatus::Paired;
        } else {
            event.status = HintStatus::Expired;
        }
        changed.push_back(event);
    }
    queue.clear();
    return changed;
}

void ToMLedger::expire_pending(int recipient) {
    for (std::size_t idx : pending_[recipient]) {
        events_[idx].status = HintStatus::Expired;
    }
    pending_[recipient].clear();
}

LedgerCounts ToMLedger::counts() const {
    LedgerCounts c;
    c.emitted = static_cast<int>(events_.size());
    for (const HintEvent& e : events_) {
        switch (e.status) {
            case HintStatus::Pending: c.pending += 1; break;
            case HintStatus::Paired: c.paired += 1; break;
            case HintStatus::Expired: c.expired += 1; break;
            case HintStatus::Flagged: c.flagged += 1; break;
        }
    }
    c.orphan_statements = static_cast<int>(orphans_.size());
    return c;
}

}  // namespace hanabench
