#ifndef RECOSYNC_SYNTHESIS_HPP
#define RECOSYNC_SYNTHESIS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recosync/product.hpp"
#include "recosync/sync_words.hpp"

namespace recosync {

enum class SynthesisMode { Monolithic, LocalModular };

struct SynthesisProblem {
    std::vector<Automaton> plants;
    std::vector<Automaton> specs;
    SynthesisMode mode = SynthesisMode::LocalModular;
};

/// Checks the problem invariants: a shared event table, pairwise-disjoint
/// plant alphabets, and every specification event backed by some plant or
/// recovery-class. Throws InputError on violation.
void validate(const SynthesisProblem& problem);

/// Accessible composition of plants and specifications. Each composite state
/// keeps its component tuple (plants first) so the controllability test can
/// consult the plant-side enablement directly.
struct SynthesisTarget {
    ProductResult product;
    std::size_t plant_count = 0;
    std::vector<Automaton> components; ///< plants then specs (copies)

    const Automaton& automaton() const { return product.automaton; }
};

SynthesisTarget build_target(std::span<const Automaton> plants, std::span<const Automaton> specs);

struct BadStateEntry {
    enum class Reason { UncontrollableExit, Blocking };
    std::string state;
    Reason reason;
};

struct SupcResult {
    Automaton supervisor; ///< empty (no states) when the initial state is bad
    std::vector<BadStateEntry> bad_states;
};

/// Which coaccessibility notion condemns blocking states during synthesis.
///
/// Classical (default) uses the full alphabet. For recovery-transformed
/// systems every state reaches the marked initial state through recovery
/// events, so pruning reduces to the controllability fixpoint; this is what
/// reproduces the published case-study supervisors, and without recovery
/// events it is the textbook construction. RecoveryAware condemns every
/// state that cannot reach a marked state over non-recovery transitions,
/// guaranteeing the stronger recovery-free nonblocking property checked by
/// audit_nonblocking (at the price of a smaller supervisor).
enum class BlockingRule { Classical, RecoveryAware };

/// Supremal controllable and nonblocking sub-behavior under the three-class
/// event partition: uncontrollable and recovery events may never be disabled
/// relative to the plant. Iterates bad-state removal to a fixpoint; the
/// blocking notion is selected by `rule`.
SupcResult supc(const SynthesisTarget& target, BlockingRule rule = BlockingRule::Classical);

/// Contract form pairing arbitrary target/plant automata by a synchronous
/// walk (events outside the plant alphabet leave the plant state in place).
SupcResult supc(const Automaton& target, const Automaton& plant,
                BlockingRule rule = BlockingRule::Classical);

/// Indices of the plants sharing at least one non-recovery event with each
/// spec. A spec sharing nothing with any plant is an input error.
std::vector<std::vector<std::size_t>> local_plant_indices(std::span<const Automaton> plants,
                                                          std::span<const Automaton> specs);

/// Local plants by spec name, composed in plant list order.
std::vector<std::pair<std::string, Automaton>> local_plants(std::span<const Automaton> plants,
                                                            std::span<const Automaton> specs);

struct SupervisorRecord {
    std::string name;
    Automaton supervisor;
    Automaton local_plant;
    std::vector<std::string> spec_names;
    std::vector<std::string> plant_names;
    std::vector<BadStateEntry> bad_states;

    std::optional<Word> sync_word;
    SyncWordMethod word_method = SyncWordMethod::None;

    bool is_empty() const { return supervisor.empty(); }
    std::size_t states() const { return supervisor.num_states(); }
    std::size_t transitions() const { return supervisor.num_transitions(); }
    std::size_t recovery_transitions() const { return supervisor.num_recovery_transitions(); }
};

struct NonconflictResult {
    bool nonconflicting = false;
    std::optional<Word> witness; ///< shortest conflict word when conflicting
};

struct SynthesisResult {
    std::vector<SupervisorRecord> supervisors;
    bool any_empty = false;
    std::optional<NonconflictResult> nonconflict; ///< modular mode, all nonempty
};

/// Monolithic: one supervisor over the composition of everything.
/// Local-modular: one supervisor per spec over its local plant, plus the
/// recovery-aware nonconflict verdict. Every supervisor gets a verified
/// synchronizing word: exact when within `exact_cutoff` states, otherwise a
/// verified recovery-event permutation, otherwise the greedy word.
SynthesisResult synthesize(const SynthesisProblem& problem,
                           std::size_t exact_cutoff = kDefaultExactStateLimit,
                           BlockingRule rule = BlockingRule::Classical);

/// Recovery-aware nonconflict test: compares, as generated languages,
///   ||_j trim(S_j without recovery transitions)        (left)
///   trim((||_j S_j) without recovery transitions)      (right)
/// With `trim_before_delete`, the left side trims each supervisor before
/// deleting its recovery transitions instead of after.
NonconflictResult check_nonconflict(std::span<const Automaton> supervisors,
                                    bool trim_before_delete = false);

/// Audit that the supervisor never disables a plant-enabled uncontrollable or
/// recovery event (walks sup and plant synchronously from their initial
/// states).
bool audit_controllability(const Automaton& sup, const Automaton& plant);

/// Audit that within the non-recovery transition structure every reachable
/// state still reaches a marked state.
bool audit_nonblocking(const Automaton& sup);

} // namespace recosync

#endif
