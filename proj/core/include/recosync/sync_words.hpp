#ifndef RECOSYNC_SYNC_WORDS_HPP
#define RECOSYNC_SYNC_WORDS_HPP

#include <optional>
#include <span>

#include "recosync/automaton.hpp"

namespace recosync {

/// Default state-count bound for the exact subset search (2^20 subsets).
inline constexpr std::size_t kDefaultExactStateLimit = 20;

/// True iff w is defined from every state and all runs end in one state
/// (which must equal `target` when given). A word with an undefined step from
/// any origin is not synchronizing.
bool is_sync_word(const Automaton& a, const Word& w, std::optional<StateId> target = std::nullopt);

/// Exact shortest synchronizing word via breadth-first search over state
/// subsets, starting from the full set; an event applies to a subset only if
/// defined at each of its states. Without a target, any singleton is a goal.
/// Ties break to the table-order lexicographically least word. Throws
/// ExactSearchLimit when num_states > max_states.
std::optional<Word> shortest_sync_word(const Automaton& a,
                                       std::optional<StateId> target = std::nullopt,
                                       std::size_t max_states = kDefaultExactStateLimit);

/// Pair-merging heuristic: repeatedly finds a shortest word (over the events
/// defined at every state) that merges the least pair of surviving states.
/// Returns a valid, not necessarily shortest, synchronizing word; nullopt if
/// some pair cannot be merged. Scales to supervisors far beyond the exact
/// bound because only pair states are searched.
std::optional<Word> greedy_sync_word(const Automaton& a,
                                     std::optional<StateId> target = std::nullopt);

/// All |restrict_to|! arrangements of the given recovery events, enumerated in
/// table-order lexicographic order. The empty set yields {empty word}. Each
/// word is a synchronizing-word *candidate* for automata built with these
/// recovery events; callers verify with is_sync_word rather than assume.
WordSet recovery_permutations(const EventTable& table, std::span<const EventId> restrict_to);

struct SyncAnalysis {
    enum class Method { ExactSubsetBfs, GreedyPairwise };
    bool synchronizing = false; ///< some word merges all states
    bool wrt_initial = false;   ///< some word merges all states into the initial one
    std::optional<Word> shortest_word;
    Method method = Method::ExactSubsetBfs;
};

/// Runs the exact search when the automaton is within `max_states`, otherwise
/// the greedy heuristic (whose failure leaves the flags false without proving
/// anything). shortest_word is minimal only under the exact method.
SyncAnalysis analyze_sync(const Automaton& a, std::size_t max_states = kDefaultExactStateLimit);

enum class SyncWordMethod { Exact, RecoveryPermutation, Greedy, None };

struct SyncWordResult {
    std::optional<Word> word;
    SyncWordMethod method = SyncWordMethod::None;
};

/// Synchronizing word onto the initial state, by the cheapest adequate route:
/// exact subset search within the cutoff (complete: a miss is definitive),
/// otherwise a verified arrangement of the automaton's recovery events,
/// otherwise the greedy heuristic.
SyncWordResult find_initial_sync_word(const Automaton& a,
                                      std::size_t exact_cutoff = kDefaultExactStateLimit);

const char* sync_word_method_name(SyncWordMethod m);

struct SynchronizingLanguageCheck {
    bool ok = false;
    bool not_synchronizing = false; ///< precondition failed: no word to initial
    std::string violated;           ///< which inclusion broke, empty when ok
    Word counterexample;            ///< full concatenated witness
};

/// Brute-force check of the three synchronizing-language inclusions
///   L(G)·I·L(G) ⊆ L(G), L(G)·I·Lm(G) ⊆ Lm(G), Lm(G)·I·Lm(G) ⊆ Lm(G)
/// over all words of the respective languages up to max_len, using one
/// witness from I obtained by the exact search.
SynchronizingLanguageCheck check_prop1(const Automaton& a, std::size_t max_len);

/// Helper shared with the check above: all generated (or marked) words of
/// length <= max_len, in length-then-lex order.
WordSet enumerate_language(const Automaton& a, std::size_t max_len, LanguageMode mode);

} // namespace recosync

#endif
