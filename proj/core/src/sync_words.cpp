#include "recosync/sync_words.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

namespace recosync {

bool is_sync_word(const Automaton& a, const Word& w, std::optional<StateId> target) {
    if (a.empty())
        return false;
    std::optional<StateId> common;
    for (StateId q = 0; q < a.num_states(); ++q) {
        auto r = step(a, q, w);
        if (!r)
            return false;
        if (common && *common != *r)
            return false;
        common = *r;
    }
    return !target || *common == *target;
}

namespace {

using Mask = std::uint64_t;

struct SubsetBfs {
    // parent pointers keyed by subset mask; the first visit is along the
    // shortest, lexicographically least word
    std::unordered_map<Mask, std::pair<Mask, EventId>> parent;

    Word reconstruct(Mask goal, Mask start) const {
        Word w;
        Mask cur = goal;
        while (cur != start) {
            auto [prev, via] = parent.at(cur);
            w.push_back(via);
            cur = prev;
        }
        std::reverse(w.begin(), w.end());
        return w;
    }
};

} // namespace

std::optional<Word> shortest_sync_word(const Automaton& a, std::optional<StateId> target,
                                       std::size_t max_states) {
    const std::size_t n = a.num_states();
    if (n == 0)
        return std::nullopt;
    if (n > max_states)
        throw ExactSearchLimit("exact synchronizing-word search refused for " +
                               std::to_string(n) + " states (bound " + std::to_string(max_states) +
                               "); use the greedy heuristic or raise the bound");
    if (n > 63)
        throw ExactSearchLimit("exact synchronizing-word search supports at most 63 states");

    // per-event successor tables; -1 marks undefined
    std::vector<std::vector<std::int64_t>> succ;
    std::vector<EventId> events(a.alphabet().begin(), a.alphabet().end());
    succ.reserve(events.size());
    for (EventId e : events) {
        std::vector<std::int64_t> col(n, -1);
        for (StateId q = 0; q < n; ++q) {
            auto t = a.next(q, e);
            if (t)
                col[q] = *t;
        }
        succ.push_back(std::move(col));
    }

    const Mask full = (Mask{1} << n) - 1;
    auto is_goal = [&](Mask m) {
        if (m == 0 || (m & (m - 1)) != 0)
            return false;
        if (!target)
            return true;
        return m == (Mask{1} << *target);
    };

    if (is_goal(full))
        return Word{};

    SubsetBfs bfs;
    std::deque<Mask> queue{full};
    bfs.parent.emplace(full, std::make_pair(full, EventId{0}));

    while (!queue.empty()) {
        Mask cur = queue.front();
        queue.pop_front();
        for (std::size_t ei = 0; ei < events.size(); ++ei) {
            Mask img = 0;
            bool total = true;
            for (Mask rest = cur; rest;) {
                int q = std::countr_zero(rest);
                rest &= rest - 1;
                std::int64_t t = succ[ei][q];
                if (t < 0) {
                    total = false;
                    break;
                }
                img |= Mask{1} << t;
            }
            if (!total || bfs.parent.count(img))
                continue;
            bfs.parent.emplace(img, std::make_pair(cur, events[ei]));
            if (is_goal(img))
                return bfs.reconstruct(img, full);
            queue.push_back(img);
        }
    }
    return std::nullopt;
}

namespace {

// Shortest path q -> target over all events (BFS, table order).
std::optional<Word> shortest_path(const Automaton& a, StateId from, StateId to) {
    if (from == to)
        return Word{};
    std::unordered_map<StateId, std::pair<StateId, EventId>> parent;
    std::deque<StateId> queue{from};
    parent.emplace(from, std::make_pair(from, EventId{0}));
    while (!queue.empty()) {
        StateId cur = queue.front();
        queue.pop_front();
        for (const auto& t : a.out(cur)) {
            if (parent.count(t.target))
                continue;
            parent.emplace(t.target, std::make_pair(cur, t.event));
            if (t.target == to) {
                Word w;
                StateId s = to;
                while (s != from) {
                    auto [p, via] = parent.at(s);
                    w.push_back(via);
                    s = p;
                }
                std::reverse(w.begin(), w.end());
                return w;
            }
            queue.push_back(t.target);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Word> greedy_sync_word(const Automaton& a, std::optional<StateId> target) {
    const std::size_t n = a.num_states();
    if (n == 0)
        return std::nullopt;

    // Only events defined at every state are safe to run from an unknown
    // state, so the merge search is restricted to that subalphabet.
    std::vector<EventId> total_events;
    for (EventId e : a.alphabet()) {
        bool total = true;
        for (StateId q = 0; q < n && total; ++q)
            total = a.next(q, e).has_value();
        if (total)
            total_events.push_back(e);
    }

    std::vector<StateId> current(n);
    for (StateId q = 0; q < n; ++q)
        current[q] = q;

    Word word;
    auto apply = [&](const Word& u) {
        current = step_set(a, current, u);
        word.insert(word.end(), u.begin(), u.end());
    };

    while (current.size() > 1) {
        // merge the least surviving pair
        const StateId p = current[0];
        const StateId q = current[1];
        auto key = [](StateId x, StateId y) {
            if (x > y)
                std::swap(x, y);
            return (static_cast<std::uint64_t>(x) << 32) | y;
        };
        std::unordered_map<std::uint64_t, std::pair<std::uint64_t, EventId>> parent;
        std::deque<std::uint64_t> queue;
        const std::uint64_t start = key(p, q);
        parent.emplace(start, std::make_pair(start, EventId{0}));
        queue.push_back(start);
        std::optional<std::uint64_t> goal;
        while (!queue.empty() && !goal) {
            std::uint64_t cur = queue.front();
            queue.pop_front();
            StateId x = static_cast<StateId>(cur >> 32);
            StateId y = static_cast<StateId>(cur & 0xffffffffu);
            for (EventId e : total_events) {
                StateId nx = *a.next(x, e);
                StateId ny = *a.next(y, e);
                std::uint64_t nxt = key(nx, ny);
                if (parent.count(nxt))
                    continue;
                parent.emplace(nxt, std::make_pair(cur, e));
                if (nx == ny) {
                    goal = nxt;
                    break;
                }
                queue.push_back(nxt);
            }
        }
        if (!goal)
            return std::nullopt;
        Word u;
        std::uint64_t cur = *goal;
        while (cur != start) {
            auto [prev, via] = parent.at(cur);
            u.push_back(via);
            cur = prev;
        }
        std::reverse(u.begin(), u.end());
        apply(u);
    }

    if (target && current[0] != *target) {
        auto tail = shortest_path(a, current[0], *target);
        if (!tail)
            return std::nullopt;
        apply(*tail);
    }
    return word;
}

WordSet recovery_permutations(const EventTable& table, std::span<const EventId> restrict_to) {
    std::vector<EventId> events(restrict_to.begin(), restrict_to.end());
    for (EventId e : events)
        if (!table.is_recovery(e))
            throw InputError("recovery_permutations: '" + table.name(e) +
                             "' is not a recovery-class event");
    std::sort(events.begin(), events.end());
    if (std::adjacent_find(events.begin(), events.end()) != events.end())
        throw InputError("recovery_permutations: duplicate event");
    if (events.size() > 9)
        throw InputError("recovery_permutations: refusing to enumerate " +
                         std::to_string(events.size()) + "! words");
    WordSet out;
    do {
        out.emplace_back(events.begin(), events.end());
    } while (std::next_permutation(events.begin(), events.end()));
    return out;
}

SyncWordResult find_initial_sync_word(const Automaton& a, std::size_t exact_cutoff) {
    SyncWordResult res;
    if (a.empty())
        return res;
    try {
        auto w = shortest_sync_word(a, a.initial(), exact_cutoff);
        if (w) {
            res.word = std::move(w);
            res.method = SyncWordMethod::Exact;
        }
        return res; // the exact search is complete either way
    } catch (const ExactSearchLimit&) {
    }
    std::vector<EventId> recovery;
    for (EventId e : a.alphabet())
        if (a.table()->is_recovery(e))
            recovery.push_back(e);
    if (!recovery.empty() && recovery.size() <= 9) {
        for (const Word& w : recovery_permutations(*a.table(), recovery)) {
            if (is_sync_word(a, w, a.initial())) {
                res.word = w;
                res.method = SyncWordMethod::RecoveryPermutation;
                return res;
            }
        }
    } else if (recovery.size() > 9) {
        // too many arrangements to enumerate; the table-order one is canonical
        Word w(recovery.begin(), recovery.end());
        if (is_sync_word(a, w, a.initial())) {
            res.word = std::move(w);
            res.method = SyncWordMethod::RecoveryPermutation;
            return res;
        }
    }
    auto g = greedy_sync_word(a, a.initial());
    if (g && is_sync_word(a, *g, a.initial())) {
        res.word = std::move(g);
        res.method = SyncWordMethod::Greedy;
    }
    return res;
}

const char* sync_word_method_name(SyncWordMethod m) {
    switch (m) {
    case SyncWordMethod::Exact: return "exact";
    case SyncWordMethod::RecoveryPermutation: return "recovery-permutation";
    case SyncWordMethod::Greedy: return "greedy";
    case SyncWordMethod::None: return "none";
    }
    return "?";
}

SyncAnalysis analyze_sync(const Automaton& a, std::size_t max_states) {
    SyncAnalysis res;
    if (a.num_states() <= max_states) {
        res.method = SyncAnalysis::Method::ExactSubsetBfs;
        auto any = shortest_sync_word(a, std::nullopt, max_states);
        res.synchronizing = any.has_value();
        res.shortest_word = std::move(any);
        if (!a.empty())
            res.wrt_initial =
                shortest_sync_word(a, a.initial(), max_states).has_value();
        return res;
    }
    res.method = SyncAnalysis::Method::GreedyPairwise;
    auto any = greedy_sync_word(a);
    res.synchronizing = any.has_value();
    res.shortest_word = std::move(any);
    if (!a.empty())
        res.wrt_initial = greedy_sync_word(a, a.initial()).has_value();
    return res;
}

WordSet enumerate_language(const Automaton& a, std::size_t max_len, LanguageMode mode) {
    WordSet out;
    if (a.empty())
        return out;
    struct Item {
        StateId state;
        Word word;
    };
    std::deque<Item> queue{{a.initial(), {}}};
    while (!queue.empty()) {
        auto [s, w] = std::move(queue.front());
        queue.pop_front();
        if (mode == LanguageMode::Generated || a.marked(s))
            out.push_back(w);
        if (w.size() == max_len)
            continue;
        for (const auto& t : a.out(s)) {
            Word nw = w;
            nw.push_back(t.event);
            queue.push_back({t.target, std::move(nw)});
        }
    }
    return out;
}

SynchronizingLanguageCheck check_prop1(const Automaton& a, std::size_t max_len) {
    SynchronizingLanguageCheck res;
    if (a.empty()) {
        res.not_synchronizing = true;
        return res;
    }
    std::optional<Word> witness;
    try {
        witness = shortest_sync_word(a, a.initial());
    } catch (const ExactSearchLimit&) {
        witness = greedy_sync_word(a, a.initial());
    }
    if (!witness) {
        res.not_synchronizing = true;
        return res;
    }
    const Word& w = *witness;

    auto concat = [](const Word& x, const Word& y, const Word& z) {
        Word out = x;
        out.insert(out.end(), y.begin(), y.end());
        out.insert(out.end(), z.begin(), z.end());
        return out;
    };

    WordSet gen = enumerate_language(a, max_len, LanguageMode::Generated);
    WordSet mk = enumerate_language(a, max_len, LanguageMode::Marked);

    auto in_generated = [&](const Word& word) { return step(a, a.initial(), word).has_value(); };
    auto in_marked = [&](const Word& word) {
        auto r = step(a, a.initial(), word);
        return r && a.marked(*r);
    };

    // (a) L I L ⊆ L
    for (const auto& s : gen) {
        auto mid = step(a, a.initial(), concat(s, w, {}));
        if (!mid) {
            res.violated = "L(G) I L(G) <= L(G)";
            res.counterexample = concat(s, w, {});
            return res;
        }
        if (*mid == a.initial())
            continue; // every t in L(G) extends from the initial state
        for (const auto& t : gen) {
            if (!in_generated(concat(s, w, t))) {
                res.violated = "L(G) I L(G) <= L(G)";
                res.counterexample = concat(s, w, t);
                return res;
            }
        }
    }
    // (b) L I Lm ⊆ Lm
    for (const auto& s : gen) {
        auto mid = step(a, a.initial(), concat(s, w, {}));
        for (const auto& t : mk) {
            if (mid && *mid == a.initial() && in_marked(t))
                continue;
            if (!in_marked(concat(s, w, t))) {
                res.violated = "L(G) I Lm(G) <= Lm(G)";
                res.counterexample = concat(s, w, t);
                return res;
            }
        }
    }
    // (c) Lm I Lm ⊆ Lm
    for (const auto& s : mk) {
        auto mid = step(a, a.initial(), concat(s, w, {}));
        for (const auto& t : mk) {
            if (mid && *mid == a.initial() && in_marked(t))
                continue;
            if (!in_marked(concat(s, w, t))) {
                res.violated = "Lm(G) I Lm(G) <= Lm(G)";
                res.counterexample = concat(s, w, t);
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

} // namespace recosync
