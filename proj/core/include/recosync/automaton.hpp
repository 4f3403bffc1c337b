#ifndef RECOSYNC_AUTOMATON_HPP
#define RECOSYNC_AUTOMATON_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recosync/event_table.hpp"

namespace recosync {

/// Deterministic finite automaton with a partial transition function over a
/// subset of a shared EventTable. Immutable after construction; all operations
/// below are pure functions returning fresh automata.
///
/// An automaton may have zero states (the empty supervisor); such an automaton
/// has no initial state and an empty language.
class Automaton {
public:
    struct Transition {
        EventId event;
        StateId target;
    };

    const std::string& name() const { return name_; }
    const std::shared_ptr<EventTable>& table() const { return table_; }

    std::span<const EventId> alphabet() const { return alphabet_; }
    bool in_alphabet(EventId e) const {
        return e < alpha_mask_.size() && alpha_mask_[e];
    }

    std::size_t num_states() const { return state_names_.size(); }
    bool empty() const { return state_names_.empty(); }

    /// Initial state; invalid on empty automata.
    StateId initial() const;

    const std::string& state_name(StateId s) const { return state_names_.at(s); }
    std::optional<StateId> find_state(std::string_view name) const;

    bool marked(StateId s) const { return marked_.at(s) != 0; }
    std::size_t num_marked() const;

    /// Outgoing transitions of s, sorted by event id.
    std::span<const Transition> out(StateId s) const;

    /// Target of (s, e), or nullopt when undefined. Throws InputError for an
    /// out-of-range state or event.
    std::optional<StateId> next(StateId s, EventId e) const;

    std::size_t num_transitions() const { return trans_flat_.size(); }

    /// Count of transitions labeled with recovery-class events.
    std::size_t num_recovery_transitions() const;

    Automaton renamed(std::string new_name) const;

private:
    friend class AutomatonBuilder;

    std::string name_;
    std::shared_ptr<EventTable> table_;
    std::vector<EventId> alphabet_;       // sorted
    std::vector<std::uint8_t> alpha_mask_; // indexed by EventId
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::vector<std::uint8_t> marked_;
    StateId initial_ = 0;
    bool has_initial_ = false;
    // Per-state transitions, flattened: trans_flat_[trans_begin_[s] .. trans_begin_[s+1])
    std::vector<Transition> trans_flat_;
    std::vector<std::uint32_t> trans_begin_;
};

/// Incremental construction with determinism and referential-integrity checks.
class AutomatonBuilder {
public:
    AutomatonBuilder(std::string name, std::shared_ptr<EventTable> table);

    void add_alphabet(EventId e);
    StateId add_state(std::string name, bool marked = false);
    void set_initial(StateId s);
    void set_marked(StateId s, bool marked = true);
    void add_transition(StateId src, EventId event, StateId dst);

    std::optional<StateId> find_state(std::string_view name) const;
    std::size_t num_states() const { return state_names_.size(); }

    /// Finalizes. A nonempty automaton must have an initial state.
    Automaton build();

private:
    std::string name_;
    std::shared_ptr<EventTable> table_;
    std::vector<EventId> alphabet_;
    std::vector<std::uint8_t> alpha_mask_;
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::vector<std::uint8_t> marked_;
    StateId initial_ = 0;
    bool has_initial_ = false;
    std::vector<std::vector<Automaton::Transition>> trans_;
};

// ---------------------------------------------------------------------------
// Core operations

/// Extended transition function: runs w from q, nullopt once a step is
/// undefined. step(a, q, {}) == q.
std::optional<StateId> step(const Automaton& a, StateId q, const Word& w);

/// Image of a state set under w; origins with an undefined run are dropped.
/// Result is sorted and duplicate-free.
std::vector<StateId> step_set(const Automaton& a, std::span<const StateId> set, const Word& w);

/// Events with a defined transition at q, in table order.
std::vector<EventId> active_events(const Automaton& a, StateId q);

/// Synchronous composition: synchronize on shared events, interleave on
/// private ones. Only the accessible part is kept. Composite state names are
/// the component names joined with '|'; n-ary composition via parallel_many
/// yields exactly the left fold of the binary operation.
Automaton parallel(const Automaton& a, const Automaton& b);
Automaton parallel_many(std::span<const Automaton* const> components, std::string name = "");

/// Lifts a to a larger alphabet by adding selfloops on the new events at every
/// state. target_alphabet must contain a's alphabet.
Automaton inverse_project(const Automaton& a, std::span<const EventId> target_alphabet);

/// Natural projection of a word: erases events outside the target alphabet.
Word project_word(const Word& w, std::span<const EventId> target_alphabet);
Word project_word(const Word& w, const Automaton& onto);

/// Restriction to states reachable from the initial state.
Automaton accessible(const Automaton& a);

/// States from which a marked state is reachable using transitions labeled
/// only with `allowed_events`.
std::vector<StateId> coaccessible_states(const Automaton& a, std::span<const EventId> allowed_events);

/// accessible ∘ restrict-to-coaccessible over the full alphabet.
Automaton trim(const Automaton& a);

/// Keeps the states with keep[s]; transitions into dropped states vanish.
/// The initial state must be kept (otherwise the result is empty).
Automaton restrict_states(const Automaton& a, const std::vector<bool>& keep);

enum class LanguageMode { Generated, Marked };

struct LanguageCompare {
    bool equal = false;
    /// Shortest distinguishing word (table-order lexicographic tie-break).
    std::optional<Word> counterexample;
};

/// Decides language equality on the accessible parts. Both automata must share
/// an EventTable; alphabets may differ (an event outside one alphabet is
/// simply never defined there).
LanguageCompare language_equal(const Automaton& a, const Automaton& b, LanguageMode mode);

} // namespace recosync

#endif
