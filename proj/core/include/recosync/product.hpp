#ifndef RECOSYNC_PRODUCT_HPP
#define RECOSYNC_PRODUCT_HPP

#include <span>
#include <string>
#include <vector>

#include "recosync/automaton.hpp"

namespace recosync {

/// Multi-component synchronous product with per-state component bookkeeping.
/// States are discovered breadth-first with events expanded in table order,
/// so numbering, naming and serialization are reproducible.
struct ProductResult {
    Automaton automaton;
    std::size_t component_count = 0;
    /// Flattened tuples: component_states[s * component_count + i] is the
    /// state of component i in product state s.
    std::vector<StateId> component_states;

    std::span<const StateId> components_of(StateId s) const {
        return {component_states.data() + s * component_count, component_count};
    }
};

ProductResult product_many(std::span<const Automaton* const> components, std::string name = "");

} // namespace recosync

#endif
