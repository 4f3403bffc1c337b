#ifndef RECOSYNC_TEST_HELPERS_HPP
#define RECOSYNC_TEST_HELPERS_HPP

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "recosync/automaton.hpp"
#include "recosync/recovery.hpp"
#include "recosync/synthesis.hpp"

namespace rt {

using namespace recosync;

inline std::shared_ptr<EventTable> make_table() {
    return std::make_shared<EventTable>();
}

// Four-state automaton with the extremal length-9 reset word: b cycles the
// states, a merges 0 into 1 and fixes the rest.
inline Automaton cerny4(const std::shared_ptr<EventTable>& t) {
    EventId a = t->intern("a", EventClass::Controllable);
    EventId b = t->intern("b", EventClass::Controllable);
    AutomatonBuilder bu("cerny4", t);
    bu.add_alphabet(a);
    bu.add_alphabet(b);
    for (int i = 0; i < 4; ++i)
        bu.add_state(std::to_string(i));
    bu.set_initial(0);
    bu.add_transition(0, a, 1);
    bu.add_transition(0, b, 1);
    bu.add_transition(1, a, 1);
    bu.add_transition(1, b, 2);
    bu.add_transition(2, a, 2);
    bu.add_transition(2, b, 3);
    bu.add_transition(3, a, 3);
    bu.add_transition(3, b, 0);
    return bu.build();
}

// Two-state automaton synchronized by the single letter c.
inline Automaton two_state_abc(const std::shared_ptr<EventTable>& t) {
    EventId a = t->intern("a", EventClass::Controllable);
    EventId b = t->intern("b", EventClass::Controllable);
    EventId c = t->intern("c", EventClass::Controllable);
    AutomatonBuilder bu("A", t);
    bu.add_alphabet(a);
    bu.add_alphabet(b);
    bu.add_alphabet(c);
    bu.add_state("0", true);
    bu.add_state("1");
    bu.set_initial(0);
    bu.add_transition(0, a, 1);
    bu.add_transition(0, c, 0);
    bu.add_transition(1, b, 0);
    bu.add_transition(1, c, 0);
    return bu.build();
}

// Transfer-line machine i over a<i>/b<i>.
inline Automaton machine(const std::shared_ptr<EventTable>& t, int i) {
    EventId a = t->intern("a" + std::to_string(i), EventClass::Controllable);
    EventId b = t->intern("b" + std::to_string(i), EventClass::Uncontrollable);
    AutomatonBuilder bu("M" + std::to_string(i), t);
    bu.add_alphabet(a);
    bu.add_alphabet(b);
    bu.add_state("0", true);
    bu.add_state("1");
    bu.set_initial(0);
    bu.add_transition(0, a, 1);
    bu.add_transition(1, b, 0);
    return bu.build();
}

// Unity buffer between machine i and machine i+1.
inline Automaton buffer(const std::shared_ptr<EventTable>& t, int i) {
    EventId fill = t->intern("b" + std::to_string(i), EventClass::Uncontrollable);
    EventId drain = t->intern("a" + std::to_string(i + 1), EventClass::Controllable);
    AutomatonBuilder bu("B" + std::to_string(i), t);
    bu.add_alphabet(fill);
    bu.add_alphabet(drain);
    bu.add_state("E", true);
    bu.add_state("F");
    bu.set_initial(0);
    bu.add_transition(0, fill, 1);
    bu.add_transition(1, drain, 0);
    return bu.build();
}

// Reference supervisor for the first buffer of the recovery-transformed
// transfer line (states named as in the published figure).
inline Automaton reference_s1(const std::shared_ptr<EventTable>& t) {
    auto ev = [&](const char* n, EventClass c) { return t->intern(n, c); };
    EventId a1 = ev("a1", EventClass::Controllable);
    EventId b1 = ev("b1", EventClass::Uncontrollable);
    EventId a2 = ev("a2", EventClass::Controllable);
    EventId b2 = ev("b2", EventClass::Uncontrollable);
    EventId r1 = ev("r1", EventClass::Recovery);
    EventId r2 = ev("r2", EventClass::Recovery);
    EventId rB1 = ev("rB1", EventClass::Recovery);
    AutomatonBuilder bu("S1_ref", t);
    for (EventId e : {a1, b1, a2, b2, r1, r2, rB1})
        bu.add_alphabet(e);
    StateId s00E = bu.add_state("00E", true);
    StateId s00F = bu.add_state("00F");
    StateId s01E = bu.add_state("01E");
    StateId s01F = bu.add_state("01F");
    StateId s10E = bu.add_state("10E");
    StateId s11E = bu.add_state("11E");
    bu.set_initial(s00E);
    auto add = [&](StateId s, EventId e, StateId d) { bu.add_transition(s, e, d); };
    add(s00E, a1, s10E); add(s00E, r1, s00E); add(s00E, r2, s00E); add(s00E, rB1, s00E);
    add(s10E, b1, s00F); add(s10E, r1, s00E); add(s10E, r2, s10E); add(s10E, rB1, s10E);
    add(s00F, a2, s01E); add(s00F, r1, s00F); add(s00F, r2, s00F); add(s00F, rB1, s00E);
    add(s01E, a1, s11E); add(s01E, b2, s00E); add(s01E, r1, s01E); add(s01E, r2, s00E);
    add(s01E, rB1, s01E);
    add(s11E, b1, s01F); add(s11E, b2, s10E); add(s11E, r1, s01E); add(s11E, r2, s10E);
    add(s11E, rB1, s11E);
    add(s01F, b2, s00F); add(s01F, r1, s01F); add(s01F, r2, s00F); add(s01F, rB1, s01E);
    return bu.build();
}

// ---------------------------------------------------------------------------
// Independent oracles: written against a raw edge map, not the library's
// stepping or search code.

struct RawAutomaton {
    std::size_t states = 0;
    std::map<std::pair<StateId, EventId>, StateId> edges;
    std::vector<EventId> events;
    StateId initial = 0;
    std::vector<bool> marked;
};

inline RawAutomaton raw_of(const Automaton& a) {
    RawAutomaton r;
    r.states = a.num_states();
    r.events.assign(a.alphabet().begin(), a.alphabet().end());
    r.initial = a.empty() ? 0 : a.initial();
    r.marked.resize(a.num_states(), false);
    for (StateId s = 0; s < a.num_states(); ++s) {
        r.marked[s] = a.marked(s);
        for (const auto& t : a.out(s))
            r.edges[{s, t.event}] = t.target;
    }
    return r;
}

inline std::optional<StateId> oracle_step(const RawAutomaton& r, StateId q, const Word& w) {
    StateId cur = q;
    for (EventId e : w) {
        auto it = r.edges.find({cur, e});
        if (it == r.edges.end())
            return std::nullopt;
        cur = it->second;
    }
    return cur;
}

inline bool oracle_is_sync(const RawAutomaton& r, const Word& w, std::optional<StateId> target) {
    std::optional<StateId> common;
    for (StateId q = 0; q < r.states; ++q) {
        auto x = oracle_step(r, q, w);
        if (!x)
            return false;
        if (common && *common != *x)
            return false;
        common = x;
    }
    if (r.states == 0)
        return false;
    return !target || *common == *target;
}

// Breadth-first enumeration of all words up to max_len; returns the length of
// the shortest synchronizing word, or nullopt if none exists within the bound.
inline std::optional<std::size_t> oracle_shortest_sync_len(const RawAutomaton& r,
                                                           std::optional<StateId> target,
                                                           std::size_t max_len) {
    std::vector<Word> level{{}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        for (const auto& w : level)
            if (oracle_is_sync(r, w, target))
                return len;
        std::vector<Word> next;
        for (const auto& w : level) {
            for (EventId e : r.events) {
                Word nw = w;
                nw.push_back(e);
                next.push_back(std::move(nw));
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

// All generated (or marked) words up to max_len by raw depth-first walk.
inline void oracle_language(const RawAutomaton& r, StateId q, std::size_t max_len, bool marked_only,
                            Word& prefix, std::set<Word>& out) {
    if (!marked_only || r.marked[q])
        out.insert(prefix);
    if (prefix.size() == max_len)
        return;
    for (EventId e : r.events) {
        auto it = r.edges.find({q, e});
        if (it == r.edges.end())
            continue;
        prefix.push_back(e);
        oracle_language(r, it->second, max_len, marked_only, prefix, out);
        prefix.pop_back();
    }
}

inline std::set<Word> oracle_language(const Automaton& a, std::size_t max_len,
                                      bool marked_only = false) {
    std::set<Word> out;
    if (a.empty())
        return out;
    RawAutomaton r = raw_of(a);
    Word prefix;
    oracle_language(r, r.initial, max_len, marked_only, prefix, out);
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic random models.

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(g); }
    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(g) < p; }
};

// Random deterministic automaton over the given events; every state is
// reachable is not guaranteed, transitions are sparse.
inline Automaton random_automaton(Rng& rng, const std::shared_ptr<EventTable>& t,
                                  const std::string& name, const std::vector<EventId>& events,
                                  std::size_t max_states) {
    std::size_t n = 1 + rng.pick(max_states);
    AutomatonBuilder bu(name, t);
    for (EventId e : events)
        bu.add_alphabet(e);
    for (std::size_t i = 0; i < n; ++i)
        bu.add_state(name + "_" + std::to_string(i), rng.chance(0.4) || i == 0);
    bu.set_initial(0);
    for (StateId s = 0; s < n; ++s)
        for (EventId e : events)
            if (rng.chance(0.6))
                bu.add_transition(s, e, static_cast<StateId>(rng.pick(n)));
    return bu.build();
}

// Random recovery-transformed synthesis problem: a handful of small plants
// with private alphabets plus specs over plant events, all made recoverable.
struct RandomProblem {
    SynthesisProblem problem;
    std::shared_ptr<EventTable> table;
};

inline RandomProblem random_recoverable_problem(std::uint64_t seed) {
    Rng rng(seed);
    auto table = make_table();
    std::size_t n_plants = 1 + rng.pick(3);                  // 1..3
    std::size_t n_specs = rng.pick(std::min<std::size_t>(3, 6 - n_plants)); // keep <=5 components

    std::vector<Automaton> plants;
    std::vector<EventId> all_events;
    for (std::size_t i = 0; i < n_plants; ++i) {
        std::vector<EventId> events;
        std::size_t n_ev = 1 + rng.pick(2);
        for (std::size_t k = 0; k < n_ev; ++k) {
            auto cls = rng.chance(0.5) ? EventClass::Controllable : EventClass::Uncontrollable;
            events.push_back(table->intern("p" + std::to_string(i) + "e" + std::to_string(k), cls));
        }
        all_events.insert(all_events.end(), events.begin(), events.end());
        // keep plants deadlock-free enough to be interesting: force at least
        // one transition out of state 0
        Automaton a = random_automaton(rng, table, "P" + std::to_string(i), events, 4);
        plants.push_back(std::move(a));
    }
    std::vector<Automaton> specs;
    for (std::size_t j = 0; j < n_specs; ++j) {
        std::vector<EventId> events;
        for (EventId e : all_events)
            if (rng.chance(0.5))
                events.push_back(e);
        if (events.empty())
            events.push_back(all_events[rng.pick(all_events.size())]);
        specs.push_back(random_automaton(rng, table, "Q" + std::to_string(j), events, 3));
    }
    auto rec = make_recoverable_set(plants, specs);
    RandomProblem rp;
    rp.problem = SynthesisProblem{rec.plants, rec.specs, SynthesisMode::LocalModular};
    rp.table = table;
    return rp;
}

} // namespace rt

#endif
