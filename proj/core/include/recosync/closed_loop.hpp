#ifndef RECOSYNC_CLOSED_LOOP_HPP
#define RECOSYNC_CLOSED_LOOP_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recosync/automaton.hpp"

namespace recosync {

struct SupervisorModel {
    Automaton automaton;
    Word sync_word; ///< replayed by recover(); verified at load
};

/// Deterministic scripted closed loop: plants hold the physical ground truth
/// and never miss their own events; supervisors hold state estimates that an
/// attack can starve of observations. Recovery replays a supervisor's
/// synchronizing word as real events, visible to everyone.
class ClosedLoop {
public:
    ClosedLoop(std::vector<Automaton> plants, std::vector<SupervisorModel> supervisors);

    struct HiddenEvent {
        EventId event;
        std::vector<std::size_t> supervisors; ///< indices blinded for this occurrence
    };

    struct State {
        std::vector<StateId> plant;
        std::vector<StateId> supervisor;
        Word history;
        std::vector<HiddenEvent> hidden;
    };

    State initial_state() const;

    std::size_t num_plants() const { return plants_.size(); }
    std::size_t num_supervisors() const { return sups_.size(); }
    const Automaton& plant(std::size_t i) const { return plants_[i]; }
    const SupervisorModel& supervisor(std::size_t i) const { return sups_[i]; }
    std::optional<std::size_t> find_plant(std::string_view name) const;
    std::optional<std::size_t> find_supervisor(std::string_view name) const;
    const std::shared_ptr<EventTable>& table() const { return table_; }

    /// Executes one event. Plants containing it always advance; supervisors
    /// containing it advance unless blinded by `hidden_from`. A blinded
    /// supervisor keeps its stale estimate and is not consulted for
    /// enablement. Hiding a recovery event is rejected.
    /// Throws PhysicalImpossibility / ControlViolation.
    State exec_event(const State& s, EventId e, std::span<const std::size_t> hidden_from = {}) const;

    /// Events executable now: enabled in every owning plant and, for
    /// controllable events, permitted by every owning supervisor's current
    /// estimate. Uncontrollable and recovery events need plant enablement only.
    std::vector<EventId> enabled_now(const State& s) const;

    /// No controllable event is enabled: the supervisors cannot initiate any
    /// further action (pending uncontrollable completions and the always-open
    /// recovery channel do not count as control progress).
    bool control_deadlocked(const State& s) const;

    /// Replays the synchronizing word of the scoped supervisor (or of each
    /// supervisor in turn for the all-scope) as ground-truth events. The
    /// scoped supervisor and its local plants end at their initial states;
    /// other supervisors advance only by the events they share.
    std::pair<State, Word> recover(const State& s, std::optional<std::size_t> scope) const;

private:
    std::shared_ptr<EventTable> table_;
    std::vector<Automaton> plants_;
    std::vector<SupervisorModel> sups_;
    std::vector<std::vector<std::size_t>> plant_owners_; // per event
    std::vector<std::vector<std::size_t>> sup_owners_;   // per event

    State advance(const State& s, EventId e, std::span<const std::size_t> hidden_from,
                  bool enforce_control) const;
};

} // namespace recosync

#endif
