#include "recosync/automaton.hpp"

#include <deque>
#include <unordered_map>

namespace recosync {

namespace {

// Pair state for the joint walk; kNone stands for "word undefined here".
constexpr std::uint32_t kNone = UINT32_MAX;

std::uint64_t pack(std::uint32_t x, std::uint32_t y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
}

} // namespace

LanguageCompare language_equal(const Automaton& a, const Automaton& b, LanguageMode mode) {
    if (a.table() != b.table())
        throw InputError("language_equal requires a shared event table");

    auto in_lang = [&](const Automaton& m, std::uint32_t s) {
        if (s == kNone)
            return false;
        return mode == LanguageMode::Generated ? true : m.marked(s);
    };

    std::uint32_t sa = a.empty() ? kNone : a.initial();
    std::uint32_t sb = b.empty() ? kNone : b.initial();

    // joint BFS storing the first (shortest, lexicographically least) path
    struct Node {
        std::uint64_t parent;
        EventId via;
    };
    std::unordered_map<std::uint64_t, Node> visited;
    std::deque<std::uint64_t> queue;

    std::uint64_t start = pack(sa, sb);
    visited.emplace(start, Node{start, 0});
    queue.push_back(start);

    auto path_to = [&](std::uint64_t node) {
        Word w;
        while (true) {
            auto& n = visited.at(node);
            if (n.parent == node)
                break;
            w.push_back(n.via);
            node = n.parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    // union alphabet, table order
    std::vector<EventId> events;
    {
        std::vector<std::uint8_t> seen(a.table()->size(), 0);
        for (EventId e : a.alphabet())
            seen[e] = 1;
        for (EventId e : b.alphabet())
            seen[e] = 1;
        for (EventId e = 0; e < seen.size(); ++e)
            if (seen[e])
                events.push_back(e);
    }

    while (!queue.empty()) {
        std::uint64_t cur = queue.front();
        queue.pop_front();
        std::uint32_t qa = static_cast<std::uint32_t>(cur >> 32);
        std::uint32_t qb = static_cast<std::uint32_t>(cur & 0xffffffffu);

        if (in_lang(a, qa) != in_lang(b, qb))
            return {false, path_to(cur)};

        for (EventId e : events) {
            std::uint32_t na = kNone;
            std::uint32_t nb = kNone;
            if (qa != kNone) {
                auto n = a.in_alphabet(e) ? a.next(qa, e) : std::nullopt;
                if (n)
                    na = *n;
            }
            if (qb != kNone) {
                auto n = b.in_alphabet(e) ? b.next(qb, e) : std::nullopt;
                if (n)
                    nb = *n;
            }
            if (na == kNone && nb == kNone)
                continue;
            if (mode == LanguageMode::Generated && (na == kNone) != (nb == kNone)) {
                Word w = path_to(cur);
                w.push_back(e);
                return {false, std::move(w)};
            }
            std::uint64_t nxt = pack(na, nb);
            if (!visited.count(nxt)) {
                visited.emplace(nxt, Node{cur, e});
                queue.push_back(nxt);
            }
        }
    }
    return {true, std::nullopt};
}

} // namespace recosync
