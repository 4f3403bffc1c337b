#ifndef RECOSYNC_EVENT_TABLE_HPP
#define RECOSYNC_EVENT_TABLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recosync/errors.hpp"

namespace recosync {

using EventId = std::uint32_t;
using StateId = std::uint32_t;

/// A finite event sequence; ids index an ambient EventTable.
using Word = std::vector<EventId>;
using WordSet = std::vector<Word>;

enum class EventClass : std::uint8_t {
    Controllable,
    Uncontrollable,
    Recovery,
};

char class_letter(EventClass c);
std::optional<EventClass> class_from_letter(char c);

/// Global registry of events. Ids are dense indices in registration order;
/// that order is the total order used for every deterministic tie-break.
/// The class of an event is fixed at first registration.
class EventTable {
public:
    /// Registers an event or returns the existing id. Re-registering with a
    /// different class is an InputError.
    EventId intern(std::string_view id, EventClass cls);

    std::optional<EventId> find(std::string_view id) const;

    /// Like find(), but throws InputError for unknown ids.
    EventId require(std::string_view id) const;

    const std::string& name(EventId e) const { return events_.at(e).name; }
    EventClass event_class(EventId e) const { return events_.at(e).cls; }

    bool is_controllable(EventId e) const { return event_class(e) == EventClass::Controllable; }
    bool is_uncontrollable(EventId e) const { return event_class(e) == EventClass::Uncontrollable; }
    bool is_recovery(EventId e) const { return event_class(e) == EventClass::Recovery; }

    std::size_t size() const { return events_.size(); }

    /// All recovery-class events, in table order.
    std::vector<EventId> recovery_events() const;

    std::string format_word(const Word& w) const;
    Word parse_word(std::string_view text) const;

private:
    struct Entry {
        std::string name;
        EventClass cls;
    };
    std::vector<Entry> events_;
    std::unordered_map<std::string, EventId> index_;
};

} // namespace recosync

#endif
