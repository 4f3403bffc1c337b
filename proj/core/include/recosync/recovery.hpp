#ifndef RECOSYNC_RECOVERY_HPP
#define RECOSYNC_RECOVERY_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "recosync/automaton.hpp"

namespace recosync {

struct RecoveryBinding {
    enum class Kind { Plant, Specification };
    std::string automaton_name;
    std::string recovery_event;
    Kind kind = Kind::Plant;
};

/// Adds the fresh recovery-class event r to the alphabet and a transition
/// δ(q, r) = initial at every state (a selfloop at the initial state itself).
/// Everything else is untouched, so the single event r already synchronizes
/// the result onto its initial state.
Automaton make_recoverable(const Automaton& a, EventId r);

struct RecoverableSet {
    std::vector<Automaton> plants;
    std::vector<Automaton> specs;
    std::vector<RecoveryBinding> bindings;
};

/// Transforms every plant and specification with its own recovery event.
/// Event ids default to "r_<automaton name>"; `event_overrides` maps an
/// automaton name to an explicit event id. New events register as
/// recovery-class in the shared table.
RecoverableSet make_recoverable_set(std::span<const Automaton> plants,
                                    std::span<const Automaton> specs,
                                    const std::map<std::string, std::string>& event_overrides = {});

/// Drops every recovery-class event from the alphabet together with its
/// transitions. Inverse direction of make_recoverable: stripping a transformed
/// automaton yields one language-equal to the original.
Automaton remove_recovery_events(const Automaton& a);

} // namespace recosync

#endif
