#include "recosync/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "recosync/recovery.hpp"

namespace recosync {

void validate(const SynthesisProblem& problem) {
    if (problem.plants.empty())
        throw InputError("synthesis needs at least one plant");
    std::shared_ptr<EventTable> table = problem.plants.front().table();
    for (const auto* group : {&problem.plants, &problem.specs})
        for (const auto& a : *group)
            if (a.table() != table)
                throw InputError("synthesis: automata use different event tables");

    std::vector<std::uint8_t> owner(table->size(), 0);
    for (const auto& p : problem.plants) {
        for (EventId e : p.alphabet()) {
            if (owner[e])
                throw InputError("plant alphabets are not disjoint: event '" + table->name(e) +
                                 "' appears in more than one plant");
            owner[e] = 1;
        }
    }
    for (const auto& s : problem.specs)
        for (EventId e : s.alphabet())
            if (!owner[e] && !table->is_recovery(e))
                throw InputError("spec '" + s.name() + "' uses event '" + table->name(e) +
                                 "' that no plant provides");
}

SynthesisTarget build_target(std::span<const Automaton> plants, std::span<const Automaton> specs) {
    if (plants.empty())
        throw InputError("build_target needs at least one plant");
    SynthesisTarget target;
    target.plant_count = plants.size();
    std::vector<const Automaton*> comps;
    for (const auto& p : plants) {
        target.components.push_back(p);
        comps.push_back(&target.components.back());
    }
    for (const auto& s : specs) {
        target.components.push_back(s);
    }
    comps.clear();
    for (const auto& c : target.components)
        comps.push_back(&c);
    target.product = product_many(comps);
    return target;
}

namespace {

// Shared fixpoint: alive[] marks surviving target states; component-level
// plant enablement is provided by a callback. Returns the supervisor over the
// surviving accessible part plus the bad-state log.
template <typename PlantEnables>
SupcResult supc_fixpoint(const Automaton& k, PlantEnables plant_enables, BlockingRule rule) {
    const auto& table = *k.table();
    const std::size_t n = k.num_states();

    std::vector<EventId> nonrecovery;
    for (EventId e : k.alphabet())
        if (!table.is_recovery(e))
            nonrecovery.push_back(e);

    std::vector<std::uint8_t> nonrec_mask(table.size(), 0);
    for (EventId e : nonrecovery)
        nonrec_mask[e] = 1;

    std::vector<std::uint8_t> relevant(table.size(), 0); // uncontrollable or recovery
    for (EventId e : k.alphabet())
        if (!table.is_controllable(e))
            relevant[e] = 1;

    std::vector<bool> alive(n, true);
    SupcResult result;
    auto log_bad = [&](StateId s, BadStateEntry::Reason r) {
        result.bad_states.push_back({k.state_name(s), r});
    };

    // reverse adjacency over the labels that count for coaccessibility
    std::vector<std::vector<StateId>> rev(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& t : k.out(s))
            if (rule == BlockingRule::Classical || nonrec_mask[t.event])
                rev[t.target].push_back(s);

    bool changed = true;
    while (changed) {
        changed = false;

        // blocking: states that cannot reach an alive marked state over the
        // transitions the selected rule counts
        {
            std::vector<bool> coacc(n, false);
            std::deque<StateId> queue;
            for (StateId s = 0; s < n; ++s) {
                if (alive[s] && k.marked(s)) {
                    coacc[s] = true;
                    queue.push_back(s);
                }
            }
            while (!queue.empty()) {
                StateId s = queue.front();
                queue.pop_front();
                for (StateId p : rev[s]) {
                    if (alive[p] && !coacc[p]) {
                        coacc[p] = true;
                        queue.push_back(p);
                    }
                }
            }
            for (StateId s = 0; s < n; ++s) {
                if (alive[s] && !coacc[s]) {
                    alive[s] = false;
                    log_bad(s, BadStateEntry::Reason::Blocking);
                    changed = true;
                }
            }
        }

        // controllability: a surviving state may not drop any plant-enabled
        // uncontrollable or recovery event
        for (StateId s = 0; s < n; ++s) {
            if (!alive[s])
                continue;
            bool bad = false;
            for (EventId e : k.alphabet()) {
                if (!relevant[e])
                    continue;
                if (!plant_enables(s, e))
                    continue;
                auto t = k.next(s, e);
                if (!t || !alive[*t]) {
                    bad = true;
                    break;
                }
            }
            if (bad) {
                alive[s] = false;
                log_bad(s, BadStateEntry::Reason::UncontrollableExit);
                changed = true;
            }
        }
    }

    std::vector<bool> keep(alive.begin(), alive.end());
    if (k.empty() || !keep[k.initial()]) {
        result.supervisor = AutomatonBuilder(k.name(), k.table()).build();
        return result;
    }
    result.supervisor = accessible(restrict_states(k, keep));
    return result;
}

} // namespace

SupcResult supc(const SynthesisTarget& target, BlockingRule rule) {
    const Automaton& k = target.automaton();
    const auto& comps = target.components;
    const std::size_t plant_count = target.plant_count;

    // owning plants per event
    std::vector<std::vector<std::uint32_t>> owners(k.table()->size());
    for (std::size_t i = 0; i < plant_count; ++i)
        for (EventId e : comps[i].alphabet())
            owners[e].push_back(static_cast<std::uint32_t>(i));

    auto plant_enables = [&](StateId s, EventId e) {
        auto tuple = target.product.components_of(s);
        for (std::uint32_t i : owners[e])
            if (!comps[i].next(tuple[i], e))
                return false;
        return true; // events owned by no plant (spec recovery events) stay enabled
    };
    return supc_fixpoint(k, plant_enables, rule);
}

SupcResult supc(const Automaton& target, const Automaton& plant, BlockingRule rule) {
    if (target.table() != plant.table())
        throw InputError("supc: target and plant use different event tables");
    for (EventId e : plant.alphabet())
        if (!target.in_alphabet(e))
            throw InputError("supc: target alphabet misses plant event '" +
                             plant.table()->name(e) + "'");
    if (target.empty())
        return {target, {}};

    // Pair every target state with the plant state reached by any word leading
    // to it; events outside the plant alphabet leave the plant in place.
    constexpr StateId kUnset = UINT32_MAX;
    std::vector<StateId> paired(target.num_states(), kUnset);
    std::deque<StateId> queue{target.initial()};
    paired[target.initial()] = plant.initial();
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const auto& t : target.out(s)) {
            StateId g = paired[s];
            if (plant.in_alphabet(t.event)) {
                auto nxt = plant.next(g, t.event);
                if (!nxt)
                    throw InputError("supc: target is not a sub-behavior of the plant (event '" +
                                     target.table()->name(t.event) + "' from state '" +
                                     target.state_name(s) + "')");
                g = *nxt;
            }
            if (paired[t.target] == kUnset) {
                paired[t.target] = g;
                queue.push_back(t.target);
            } else if (paired[t.target] != g) {
                throw InputError("supc: ambiguous plant pairing at target state '" +
                                 target.state_name(t.target) +
                                 "'; build the target with build_target");
            }
        }
    }

    auto plant_enables = [&](StateId s, EventId e) {
        if (!plant.in_alphabet(e))
            return true;
        if (paired[s] == kUnset)
            return false; // unreachable target state; never kept anyway
        return plant.next(paired[s], e).has_value();
    };
    return supc_fixpoint(target, plant_enables, rule);
}

std::vector<std::vector<std::size_t>> local_plant_indices(std::span<const Automaton> plants,
                                                          std::span<const Automaton> specs) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        std::vector<std::size_t> indices;
        for (std::size_t i = 0; i < plants.size(); ++i) {
            bool shares = false;
            for (EventId e : spec.alphabet()) {
                // recovery events never couple a spec to a plant
                if (spec.table()->is_recovery(e))
                    continue;
                if (plants[i].in_alphabet(e)) {
                    shares = true;
                    break;
                }
            }
            if (shares)
                indices.push_back(i);
        }
        if (indices.empty())
            throw InputError("spec '" + spec.name() + "' shares no event with any plant");
        out.push_back(std::move(indices));
    }
    return out;
}

std::vector<std::pair<std::string, Automaton>> local_plants(std::span<const Automaton> plants,
                                                            std::span<const Automaton> specs) {
    auto indices = local_plant_indices(plants, specs);
    std::vector<std::pair<std::string, Automaton>> out;
    for (std::size_t j = 0; j < specs.size(); ++j) {
        std::vector<const Automaton*> comps;
        for (std::size_t i : indices[j])
            comps.push_back(&plants[i]);
        out.emplace_back(specs[j].name(), parallel_many(comps));
    }
    return out;
}

namespace {

void attach_sync_word(SupervisorRecord& rec, std::size_t exact_cutoff) {
    if (rec.is_empty())
        return;
    auto res = find_initial_sync_word(rec.supervisor, exact_cutoff);
    rec.sync_word = std::move(res.word);
    rec.word_method = res.method;
}

} // namespace

SynthesisResult synthesize(const SynthesisProblem& problem, std::size_t exact_cutoff,
                           BlockingRule rule) {
    validate(problem);
    SynthesisResult result;

    if (problem.mode == SynthesisMode::Monolithic) {
        auto target = build_target(problem.plants, problem.specs);
        auto sup = supc(target, rule);
        SupervisorRecord rec;
        rec.name = "S_monolithic";
        std::vector<const Automaton*> comps;
        for (const auto& p : problem.plants)
            comps.push_back(&p);
        rec.local_plant = parallel_many(comps);
        rec.supervisor = sup.supervisor.renamed(rec.name);
        rec.bad_states = std::move(sup.bad_states);
        for (const auto& p : problem.plants)
            rec.plant_names.push_back(p.name());
        for (const auto& s : problem.specs)
            rec.spec_names.push_back(s.name());
        attach_sync_word(rec, exact_cutoff);
        result.any_empty = rec.is_empty();
        result.supervisors.push_back(std::move(rec));
        return result;
    }

    auto indices = local_plant_indices(problem.plants, problem.specs);
    for (std::size_t j = 0; j < problem.specs.size(); ++j) {
        const Automaton& spec = problem.specs[j];
        std::vector<Automaton> local;
        SupervisorRecord rec;
        rec.name = "S_" + spec.name();
        rec.spec_names.push_back(spec.name());
        for (std::size_t i : indices[j]) {
            local.push_back(problem.plants[i]);
            rec.plant_names.push_back(problem.plants[i].name());
        }
        std::vector<const Automaton*> comps;
        for (const auto& p : local)
            comps.push_back(&p);
        rec.local_plant = parallel_many(comps);

        auto target = build_target(local, {&spec, 1});
        auto sup = supc(target, rule);
        rec.supervisor = sup.supervisor.renamed(rec.name);
        rec.bad_states = std::move(sup.bad_states);
        attach_sync_word(rec, exact_cutoff);
        result.any_empty = result.any_empty || rec.is_empty();
        result.supervisors.push_back(std::move(rec));
    }

    if (!result.any_empty) {
        std::vector<Automaton> sups;
        for (const auto& rec : result.supervisors)
            sups.push_back(rec.supervisor);
        result.nonconflict = check_nonconflict(sups);
    }
    return result;
}

NonconflictResult check_nonconflict(std::span<const Automaton> supervisors,
                                    bool trim_before_delete) {
    if (supervisors.empty())
        throw InputError("check_nonconflict: no supervisors");
    if (supervisors.size() == 1)
        return {true, std::nullopt};

    std::vector<Automaton> left_parts;
    for (const auto& s : supervisors) {
        left_parts.push_back(trim_before_delete ? remove_recovery_events(trim(s))
                                                : trim(remove_recovery_events(s)));
        if (left_parts.back().empty())
            // a supervisor with no recovery-free marked behavior conflicts with
            // nothing and everything; compare against the empty language
            break;
    }

    std::vector<const Automaton*> left_ptrs;
    for (const auto& a : left_parts)
        left_ptrs.push_back(&a);
    Automaton left = left_parts.size() == supervisors.size()
                         ? parallel_many(left_ptrs, "nonconflict_left")
                         : AutomatonBuilder("nonconflict_left", supervisors[0].table()).build();

    std::vector<const Automaton*> sup_ptrs;
    for (const auto& s : supervisors)
        sup_ptrs.push_back(&s);
    Automaton composed = parallel_many(sup_ptrs, "nonconflict_right");
    Automaton right = trim(remove_recovery_events(composed));

    auto cmp = language_equal(left, right, LanguageMode::Generated);
    return {cmp.equal, cmp.counterexample};
}

bool audit_controllability(const Automaton& sup, const Automaton& plant) {
    if (sup.empty())
        return true;
    const auto& table = *sup.table();
    constexpr StateId kUnset = UINT32_MAX;
    std::vector<StateId> paired(sup.num_states(), kUnset);
    std::deque<StateId> queue{sup.initial()};
    paired[sup.initial()] = plant.initial();
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        StateId g = paired[s];
        for (EventId e : plant.alphabet()) {
            if (table.is_controllable(e))
                continue;
            if (plant.next(g, e) && !sup.next(s, e))
                return false; // plant-enabled uncontrollable/recovery event disabled
        }
        for (const auto& t : sup.out(s)) {
            StateId ng = g;
            if (plant.in_alphabet(t.event)) {
                auto nxt = plant.next(g, t.event);
                if (!nxt)
                    return false; // supervisor runs ahead of its plant
                ng = *nxt;
            }
            if (paired[t.target] == kUnset) {
                paired[t.target] = ng;
                queue.push_back(t.target);
            }
        }
    }
    return true;
}

bool audit_nonblocking(const Automaton& sup) {
    if (sup.empty())
        return true;
    Automaton stripped = accessible(remove_recovery_events(sup));
    std::vector<EventId> full(stripped.alphabet().begin(), stripped.alphabet().end());
    auto coacc = coaccessible_states(stripped, full);
    return coacc.size() == stripped.num_states();
}

} // namespace recosync
