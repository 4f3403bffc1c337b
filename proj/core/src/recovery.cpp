#include "recosync/recovery.hpp"

#include <set>

namespace recosync {

Automaton make_recoverable(const Automaton& a, EventId r) {
    const auto& table = *a.table();
    if (r >= table.size())
        throw InputError("make_recoverable: event out of table range");
    if (!table.is_recovery(r))
        throw InputError("make_recoverable: '" + table.name(r) + "' is not recovery-class");
    if (a.in_alphabet(r))
        throw InputError("make_recoverable: '" + table.name(r) + "' already in the alphabet of '" +
                         a.name() + "'");
    if (a.empty())
        throw InputError("make_recoverable: automaton '" + a.name() + "' has no states");

    AutomatonBuilder b(a.name(), a.table());
    for (EventId e : a.alphabet())
        b.add_alphabet(e);
    b.add_alphabet(r);
    for (StateId s = 0; s < a.num_states(); ++s)
        b.add_state(a.state_name(s), a.marked(s));
    b.set_initial(a.initial());
    for (StateId s = 0; s < a.num_states(); ++s) {
        for (const auto& t : a.out(s))
            b.add_transition(s, t.event, t.target);
        b.add_transition(s, r, a.initial());
    }
    return b.build();
}

RecoverableSet make_recoverable_set(std::span<const Automaton> plants,
                                    std::span<const Automaton> specs,
                                    const std::map<std::string, std::string>& event_overrides) {
    RecoverableSet out;
    std::set<std::string> names;
    std::shared_ptr<EventTable> table;
    for (const auto* group : {&plants, &specs}) {
        for (const auto& a : *group) {
            if (!names.insert(a.name()).second)
                throw InputError("make_recoverable_set: duplicate automaton name '" + a.name() + "'");
            if (!table)
                table = a.table();
            else if (table != a.table())
                throw InputError("make_recoverable_set: automata use different event tables");
        }
    }
    auto transform = [&](const Automaton& a, RecoveryBinding::Kind kind) {
        auto it = event_overrides.find(a.name());
        std::string event_name = it != event_overrides.end() ? it->second : "r_" + a.name();
        EventId r = a.table()->intern(event_name, EventClass::Recovery);
        out.bindings.push_back({a.name(), event_name, kind});
        return make_recoverable(a, r);
    };
    for (const auto& a : plants)
        out.plants.push_back(transform(a, RecoveryBinding::Kind::Plant));
    for (const auto& a : specs)
        out.specs.push_back(transform(a, RecoveryBinding::Kind::Specification));
    return out;
}

Automaton remove_recovery_events(const Automaton& a) {
    const auto& table = *a.table();
    AutomatonBuilder b(a.name(), a.table());
    for (EventId e : a.alphabet())
        if (!table.is_recovery(e))
            b.add_alphabet(e);
    for (StateId s = 0; s < a.num_states(); ++s)
        b.add_state(a.state_name(s), a.marked(s));
    if (!a.empty())
        b.set_initial(a.initial());
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& t : a.out(s))
            if (!table.is_recovery(t.event))
                b.add_transition(s, t.event, t.target);
    return b.build();
}

} // namespace recosync
