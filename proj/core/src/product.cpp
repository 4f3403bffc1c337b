#include "recosync/product.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <unordered_map>

namespace recosync {

namespace {

std::string joined_state_name(std::span<const Automaton* const> comps,
                              std::span<const StateId> tuple) {
    std::string out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i)
            out += '|';
        out += comps[i]->state_name(tuple[i]);
    }
    return out;
}

std::string key_of(std::span<const StateId> tuple) {
    std::string k(tuple.size() * sizeof(StateId), '\0');
    std::memcpy(k.data(), tuple.data(), k.size());
    return k;
}

} // namespace

ProductResult product_many(std::span<const Automaton* const> components, std::string name) {
    if (components.empty())
        throw InputError("product of zero components");
    const auto& table = components[0]->table();
    for (const auto* c : components) {
        if (c->table() != table)
            throw InputError("parallel composition requires a shared event table");
        if (c->empty())
            throw InputError("parallel composition of an empty automaton");
    }
    const std::size_t n = components.size();

    if (name.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i)
                name += "||";
            name += components[i]->name();
        }
    }

    // Union alphabet in table order, with the owning components of each event.
    std::vector<std::uint8_t> in_union(table->size(), 0);
    for (const auto* c : components)
        for (EventId e : c->alphabet())
            in_union[e] = 1;
    std::vector<EventId> alphabet;
    std::vector<std::vector<std::uint32_t>> owners(table->size());
    for (EventId e = 0; e < table->size(); ++e) {
        if (!in_union[e])
            continue;
        alphabet.push_back(e);
        for (std::uint32_t i = 0; i < n; ++i)
            if (components[i]->in_alphabet(e))
                owners[e].push_back(i);
    }

    AutomatonBuilder builder(name, table);
    for (EventId e : alphabet)
        builder.add_alphabet(e);

    ProductResult result;
    result.component_count = n;

    std::unordered_map<std::string, StateId> index;
    std::vector<StateId> tuple(n);
    for (std::size_t i = 0; i < n; ++i)
        tuple[i] = components[i]->initial();

    auto add_state = [&](std::span<const StateId> t) {
        bool all_marked = true;
        for (std::size_t i = 0; i < n; ++i)
            all_marked = all_marked && components[i]->marked(t[i]);
        StateId s = builder.add_state(joined_state_name(components, t), all_marked);
        result.component_states.insert(result.component_states.end(), t.begin(), t.end());
        return s;
    };

    StateId init = add_state(tuple);
    builder.set_initial(init);
    index.emplace(key_of(tuple), init);

    std::deque<StateId> queue{init};
    std::vector<StateId> next_tuple(n);
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        // copy: component_states may reallocate while appending below
        std::vector<StateId> cur(result.components_of(s).begin(), result.components_of(s).end());
        for (EventId e : alphabet) {
            bool defined = true;
            std::copy(cur.begin(), cur.end(), next_tuple.begin());
            for (std::uint32_t i : owners[e]) {
                auto nxt = components[i]->next(cur[i], e);
                if (!nxt) {
                    defined = false;
                    break;
                }
                next_tuple[i] = *nxt;
            }
            if (!defined)
                continue;
            auto key = key_of(next_tuple);
            auto it = index.find(key);
            StateId dst;
            if (it == index.end()) {
                dst = add_state(next_tuple);
                index.emplace(std::move(key), dst);
                queue.push_back(dst);
            } else {
                dst = it->second;
            }
            builder.add_transition(s, e, dst);
        }
    }

    result.automaton = builder.build();
    return result;
}

Automaton parallel(const Automaton& a, const Automaton& b) {
    const Automaton* comps[2] = {&a, &b};
    return product_many(comps).automaton;
}

Automaton parallel_many(std::span<const Automaton* const> components, std::string name) {
    if (components.size() == 1)
        return accessible(*components[0]).renamed(name.empty() ? components[0]->name()
                                                               : std::move(name));
    return product_many(components, std::move(name)).automaton;
}

} // namespace recosync
