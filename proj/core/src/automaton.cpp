#include "recosync/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace recosync {

StateId Automaton::initial() const {
    if (!has_initial_)
        throw InputError("automaton '" + name_ + "' is empty and has no initial state");
    return initial_;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Automaton::num_marked() const {
    std::size_t n = 0;
    for (auto m : marked_)
        n += m;
    return n;
}

std::span<const Automaton::Transition> Automaton::out(StateId s) const {
    if (s >= num_states())
        throw InputError("unknown state index in automaton '" + name_ + "'");
    return {trans_flat_.data() + trans_begin_[s],
            trans_flat_.data() + trans_begin_[s + 1]};
}

std::optional<StateId> Automaton::next(StateId s, EventId e) const {
    if (e >= table_->size())
        throw InputError("unknown event id in automaton '" + name_ + "'");
    auto ts = out(s);
    auto it = std::lower_bound(ts.begin(), ts.end(), e,
                               [](const Transition& t, EventId ev) { return t.event < ev; });
    if (it != ts.end() && it->event == e)
        return it->target;
    return std::nullopt;
}

std::size_t Automaton::num_recovery_transitions() const {
    std::size_t n = 0;
    for (const auto& t : trans_flat_)
        if (table_->is_recovery(t.event))
            ++n;
    return n;
}

Automaton Automaton::renamed(std::string new_name) const {
    Automaton copy = *this;
    copy.name_ = std::move(new_name);
    return copy;
}

AutomatonBuilder::AutomatonBuilder(std::string name, std::shared_ptr<EventTable> table)
    : name_(std::move(name)), table_(std::move(table)) {
    if (!table_)
        throw InputError("automaton requires an event table");
}

void AutomatonBuilder::add_alphabet(EventId e) {
    if (e >= table_->size())
        throw InputError("alphabet event out of table range");
    if (e >= alpha_mask_.size())
        alpha_mask_.resize(table_->size(), 0);
    if (!alpha_mask_[e]) {
        alpha_mask_[e] = 1;
        alphabet_.push_back(e);
    }
}

StateId AutomatonBuilder::add_state(std::string name, bool marked) {
    if (name.empty())
        throw InputError("state id must be nonempty");
    if (state_index_.count(name))
        throw InputError("duplicate state id '" + name + "' in automaton '" + name_ + "'");
    StateId s = static_cast<StateId>(state_names_.size());
    state_index_.emplace(name, s);
    state_names_.push_back(std::move(name));
    marked_.push_back(marked ? 1 : 0);
    trans_.emplace_back();
    return s;
}

void AutomatonBuilder::set_initial(StateId s) {
    if (s >= state_names_.size())
        throw InputError("initial state out of range");
    if (has_initial_ && initial_ != s)
        throw InputError("automaton '" + name_ + "' declares more than one initial state");
    initial_ = s;
    has_initial_ = true;
}

void AutomatonBuilder::set_marked(StateId s, bool marked) {
    marked_.at(s) = marked ? 1 : 0;
}

std::optional<StateId> AutomatonBuilder::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
        return std::nullopt;
    return it->second;
}

void AutomatonBuilder::add_transition(StateId src, EventId event, StateId dst) {
    if (src >= state_names_.size() || dst >= state_names_.size())
        throw InputError("transition endpoint out of range in automaton '" + name_ + "'");
    if (event >= alpha_mask_.size() || !alpha_mask_[event])
        throw InputError("transition label '" + table_->name(event) +
                         "' is not in the alphabet of automaton '" + name_ + "'");
    for (const auto& t : trans_[src]) {
        if (t.event == event) {
            if (t.target == dst)
                return; // idempotent re-add
            throw InputError("nondeterministic transition on '" + table_->name(event) +
                             "' at state '" + state_names_[src] + "' of automaton '" + name_ + "'");
        }
    }
    trans_[src].push_back({event, dst});
}

Automaton AutomatonBuilder::build() {
    if (!state_names_.empty() && !has_initial_)
        throw InputError("automaton '" + name_ + "' has no initial state");

    Automaton a;
    a.name_ = std::move(name_);
    a.table_ = std::move(table_);
    std::sort(alphabet_.begin(), alphabet_.end());
    a.alphabet_ = std::move(alphabet_);
    alpha_mask_.resize(a.table_->size(), 0);
    a.alpha_mask_ = std::move(alpha_mask_);
    a.state_names_ = std::move(state_names_);
    a.state_index_ = std::move(state_index_);
    a.marked_ = std::move(marked_);
    a.initial_ = initial_;
    a.has_initial_ = has_initial_;

    a.trans_begin_.resize(a.state_names_.size() + 1, 0);
    std::size_t total = 0;
    for (std::size_t s = 0; s < trans_.size(); ++s) {
        std::sort(trans_[s].begin(), trans_[s].end(),
                  [](const Automaton::Transition& x, const Automaton::Transition& y) {
                      return x.event < y.event;
                  });
        a.trans_begin_[s] = static_cast<std::uint32_t>(total);
        total += trans_[s].size();
    }
    a.trans_begin_[trans_.size()] = static_cast<std::uint32_t>(total);
    a.trans_flat_.reserve(total);
    for (auto& ts : trans_)
        a.trans_flat_.insert(a.trans_flat_.end(), ts.begin(), ts.end());
    return a;
}

// ---------------------------------------------------------------------------

std::optional<StateId> step(const Automaton& a, StateId q, const Word& w) {
    if (q >= a.num_states())
        throw InputError("step: unknown state index in automaton '" + a.name() + "'");
    StateId cur = q;
    for (EventId e : w) {
        auto nxt = a.next(cur, e);
        if (!nxt)
            return std::nullopt;
        cur = *nxt;
    }
    return cur;
}

std::vector<StateId> step_set(const Automaton& a, std::span<const StateId> set, const Word& w) {
    std::vector<StateId> out;
    out.reserve(set.size());
    for (StateId q : set) {
        auto r = step(a, q, w);
        if (r)
            out.push_back(*r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<EventId> active_events(const Automaton& a, StateId q) {
    std::vector<EventId> out;
    for (const auto& t : a.out(q))
        out.push_back(t.event);
    return out;
}

Automaton inverse_project(const Automaton& a, std::span<const EventId> target_alphabet) {
    std::vector<std::uint8_t> in_target(a.table()->size(), 0);
    for (EventId e : target_alphabet) {
        if (e >= a.table()->size())
            throw InputError("inverse_project: event out of table range");
        in_target[e] = 1;
    }
    for (EventId e : a.alphabet())
        if (!in_target[e])
            throw InputError("inverse_project: target alphabet misses event '" +
                             a.table()->name(e) + "' of automaton '" + a.name() + "'");

    AutomatonBuilder b(a.name(), a.table());
    for (EventId e : target_alphabet)
        b.add_alphabet(e);
    for (StateId s = 0; s < a.num_states(); ++s)
        b.add_state(a.state_name(s), a.marked(s));
    if (!a.empty())
        b.set_initial(a.initial());
    for (StateId s = 0; s < a.num_states(); ++s) {
        for (const auto& t : a.out(s))
            b.add_transition(s, t.event, t.target);
        for (EventId e : target_alphabet)
            if (!a.in_alphabet(e))
                b.add_transition(s, e, s);
    }
    return b.build();
}

Word project_word(const Word& w, std::span<const EventId> target_alphabet) {
    std::vector<std::uint8_t> keep;
    for (EventId e : target_alphabet) {
        if (e >= keep.size())
            keep.resize(e + 1, 0);
        keep[e] = 1;
    }
    Word out;
    for (EventId e : w)
        if (e < keep.size() && keep[e])
            out.push_back(e);
    return out;
}

Word project_word(const Word& w, const Automaton& onto) {
    return project_word(w, onto.alphabet());
}

Automaton restrict_states(const Automaton& a, const std::vector<bool>& keep) {
    AutomatonBuilder b(a.name(), a.table());
    for (EventId e : a.alphabet())
        b.add_alphabet(e);
    std::vector<StateId> remap(a.num_states(), UINT32_MAX);
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (keep[s])
            remap[s] = b.add_state(a.state_name(s), a.marked(s));
    }
    if (!a.empty() && keep[a.initial()])
        b.set_initial(remap[a.initial()]);
    else
        return AutomatonBuilder(a.name(), a.table()).build(); // empty result
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (!keep[s])
            continue;
        for (const auto& t : a.out(s))
            if (keep[t.target])
                b.add_transition(remap[s], t.event, remap[t.target]);
    }
    return b.build();
}

Automaton accessible(const Automaton& a) {
    if (a.empty())
        return a;
    std::vector<bool> seen(a.num_states(), false);
    std::deque<StateId> queue{a.initial()};
    seen[a.initial()] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const auto& t : a.out(s)) {
            if (!seen[t.target]) {
                seen[t.target] = true;
                queue.push_back(t.target);
            }
        }
    }
    return restrict_states(a, seen);
}

std::vector<StateId> coaccessible_states(const Automaton& a, std::span<const EventId> allowed_events) {
    std::vector<std::uint8_t> allowed(a.table()->size(), 0);
    for (EventId e : allowed_events) {
        if (e >= a.table()->size())
            throw InputError("coaccessible_states: event out of table range");
        allowed[e] = 1;
    }
    // reverse adjacency over allowed labels
    std::vector<std::vector<StateId>> rev(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& t : a.out(s))
            if (allowed[t.event])
                rev[t.target].push_back(s);
    std::vector<bool> coacc(a.num_states(), false);
    std::deque<StateId> queue;
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (a.marked(s)) {
            coacc[s] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId p : rev[s]) {
            if (!coacc[p]) {
                coacc[p] = true;
                queue.push_back(p);
            }
        }
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < a.num_states(); ++s)
        if (coacc[s])
            out.push_back(s);
    return out;
}

Automaton trim(const Automaton& a) {
    std::vector<EventId> full(a.alphabet().begin(), a.alphabet().end());
    auto coacc = coaccessible_states(a, full);
    std::vector<bool> keep(a.num_states(), false);
    for (StateId s : coacc)
        keep[s] = true;
    if (a.empty() || !keep[a.initial()])
        return AutomatonBuilder(a.name(), a.table()).build();
    return accessible(restrict_states(a, keep));
}

} // namespace recosync
