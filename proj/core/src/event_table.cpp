#include "recosync/event_table.hpp"

#include <sstream>

namespace recosync {

char class_letter(EventClass c) {
    switch (c) {
    case EventClass::Controllable: return 'c';
    case EventClass::Uncontrollable: return 'u';
    case EventClass::Recovery: return 'r';
    }
    return '?';
}

std::optional<EventClass> class_from_letter(char c) {
    switch (c) {
    case 'c': return EventClass::Controllable;
    case 'u': return EventClass::Uncontrollable;
    case 'r': return EventClass::Recovery;
    default: return std::nullopt;
    }
}

EventId EventTable::intern(std::string_view id, EventClass cls) {
    if (id.empty())
        throw InputError("event id must be a nonempty token");
    for (char ch : id)
        if (std::isspace(static_cast<unsigned char>(ch)))
            throw InputError("event id may not contain whitespace: '" + std::string(id) + "'");
    auto it = index_.find(std::string(id));
    if (it != index_.end()) {
        if (events_[it->second].cls != cls)
            throw InputError("event '" + std::string(id) + "' already registered with class '" +
                             std::string(1, class_letter(events_[it->second].cls)) +
                             "', conflicting class '" + std::string(1, class_letter(cls)) + "'");
        return it->second;
    }
    EventId e = static_cast<EventId>(events_.size());
    events_.push_back({std::string(id), cls});
    index_.emplace(std::string(id), e);
    return e;
}

std::optional<EventId> EventTable::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

EventId EventTable::require(std::string_view id) const {
    auto e = find(id);
    if (!e)
        throw InputError("unknown event id '" + std::string(id) + "'");
    return *e;
}

std::vector<EventId> EventTable::recovery_events() const {
    std::vector<EventId> out;
    for (EventId e = 0; e < events_.size(); ++e)
        if (events_[e].cls == EventClass::Recovery)
            out.push_back(e);
    return out;
}

std::string EventTable::format_word(const Word& w) const {
    if (w.empty())
        return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        out += name(w[i]);
    }
    return out;
}

Word EventTable::parse_word(std::string_view text) const {
    Word w;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok)
        w.push_back(require(tok));
    return w;
}

} // namespace recosync
