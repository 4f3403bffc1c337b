#include "recosync/closed_loop.hpp"

#include <algorithm>

#include "recosync/sync_words.hpp"

namespace recosync {

ClosedLoop::ClosedLoop(std::vector<Automaton> plants, std::vector<SupervisorModel> supervisors)
    : plants_(std::move(plants)), sups_(std::move(supervisors)) {
    if (plants_.empty())
        throw InputError("closed loop needs at least one plant");
    table_ = plants_.front().table();
    for (const auto& p : plants_)
        if (p.table() != table_)
            throw InputError("closed loop: plants use different event tables");
    for (const auto& s : sups_) {
        if (s.automaton.table() != table_)
            throw InputError("closed loop: supervisors use different event tables");
        if (s.automaton.empty())
            throw InputError("closed loop: supervisor '" + s.automaton.name() + "' is empty");
        if (!is_sync_word(s.automaton, s.sync_word, s.automaton.initial()))
            throw InputError("closed loop: stored word for supervisor '" + s.automaton.name() +
                             "' is not synchronizing to its initial state");
    }
    plant_owners_.resize(table_->size());
    sup_owners_.resize(table_->size());
    for (std::size_t i = 0; i < plants_.size(); ++i)
        for (EventId e : plants_[i].alphabet())
            plant_owners_[e].push_back(i);
    for (std::size_t i = 0; i < sups_.size(); ++i)
        for (EventId e : sups_[i].automaton.alphabet())
            sup_owners_[e].push_back(i);
}

ClosedLoop::State ClosedLoop::initial_state() const {
    State s;
    for (const auto& p : plants_)
        s.plant.push_back(p.initial());
    for (const auto& sup : sups_)
        s.supervisor.push_back(sup.automaton.initial());
    return s;
}

std::optional<std::size_t> ClosedLoop::find_plant(std::string_view name) const {
    for (std::size_t i = 0; i < plants_.size(); ++i)
        if (plants_[i].name() == name)
            return i;
    return std::nullopt;
}

std::optional<std::size_t> ClosedLoop::find_supervisor(std::string_view name) const {
    for (std::size_t i = 0; i < sups_.size(); ++i)
        if (sups_[i].automaton.name() == name)
            return i;
    return std::nullopt;
}

ClosedLoop::State ClosedLoop::advance(const State& s, EventId e,
                                      std::span<const std::size_t> hidden_from,
                                      bool enforce_control) const {
    if (e >= table_->size())
        throw InputError("unknown event id");

    auto blinded = [&](std::size_t sup) {
        return std::find(hidden_from.begin(), hidden_from.end(), sup) != hidden_from.end();
    };

    // physical feasibility first
    for (std::size_t i : plant_owners_[e]) {
        if (!plants_[i].next(s.plant[i], e))
            throw PhysicalImpossibility("event '" + table_->name(e) + "' is not possible in plant '" +
                                        plants_[i].name() + "' (state '" +
                                        plants_[i].state_name(s.plant[i]) + "')");
    }
    if (enforce_control && table_->is_controllable(e)) {
        for (std::size_t i : sup_owners_[e]) {
            if (blinded(i))
                continue; // an attacker bypasses the supervisors it blinds
            if (!sups_[i].automaton.next(s.supervisor[i], e))
                throw ControlViolation("supervisor '" + sups_[i].automaton.name() +
                                       "' disables controllable event '" + table_->name(e) +
                                       "' at its estimate '" +
                                       sups_[i].automaton.state_name(s.supervisor[i]) + "'");
        }
    }

    State out = s;
    for (std::size_t i : plant_owners_[e])
        out.plant[i] = *plants_[i].next(s.plant[i], e);
    HiddenEvent hid{e, {}};
    for (std::size_t i : sup_owners_[e]) {
        if (blinded(i)) {
            hid.supervisors.push_back(i);
            continue;
        }
        auto nxt = sups_[i].automaton.next(s.supervisor[i], e);
        if (nxt) {
            out.supervisor[i] = *nxt;
        } else if (!table_->is_controllable(e)) {
            // an unexpected uncontrollable observation: the estimate cannot
            // follow, which is itself a desynchronization symptom
            hid.supervisors.push_back(i);
        }
    }
    out.history.push_back(e);
    if (!hid.supervisors.empty())
        out.hidden.push_back(std::move(hid));
    return out;
}

ClosedLoop::State ClosedLoop::exec_event(const State& s, EventId e,
                                         std::span<const std::size_t> hidden_from) const {
    if (!hidden_from.empty() && table_->is_recovery(e))
        throw InputError("recovery events cannot be hidden: the recovery channel is assumed clean");
    return advance(s, e, hidden_from, /*enforce_control=*/true);
}

std::vector<EventId> ClosedLoop::enabled_now(const State& s) const {
    std::vector<EventId> out;
    for (EventId e = 0; e < table_->size(); ++e) {
        if (plant_owners_[e].empty() && sup_owners_[e].empty())
            continue; // not part of the loaded models
        bool ok = true;
        for (std::size_t i : plant_owners_[e])
            if (!plants_[i].next(s.plant[i], e)) {
                ok = false;
                break;
            }
        if (ok && table_->is_controllable(e)) {
            for (std::size_t i : sup_owners_[e])
                if (!sups_[i].automaton.next(s.supervisor[i], e)) {
                    ok = false;
                    break;
                }
        }
        if (ok)
            out.push_back(e);
    }
    return out;
}

bool ClosedLoop::control_deadlocked(const State& s) const {
    for (EventId e : enabled_now(s))
        if (table_->is_controllable(e))
            return false;
    return true;
}

std::pair<ClosedLoop::State, Word> ClosedLoop::recover(const State& s,
                                                       std::optional<std::size_t> scope) const {
    std::vector<std::size_t> order;
    if (scope) {
        if (*scope >= sups_.size())
            throw InputError("recover: supervisor index out of range");
        order.push_back(*scope);
    } else {
        for (std::size_t i = 0; i < sups_.size(); ++i)
            order.push_back(i);
    }
    State cur = s;
    Word executed;
    for (std::size_t i : order) {
        const Word& w = sups_[i].sync_word;
        for (EventId e : w) {
            // ground truth: recovery resets components physically, every
            // observer sees it
            cur = advance(cur, e, {}, /*enforce_control=*/false);
            executed.push_back(e);
        }
    }
    return {cur, executed};
}

} // namespace recosync
