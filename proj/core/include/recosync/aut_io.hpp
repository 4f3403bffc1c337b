#ifndef RECOSYNC_AUT_IO_HPP
#define RECOSYNC_AUT_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "recosync/automaton.hpp"

namespace recosync {

/// Line-oriented plain-text automaton format:
///
///   automaton <name>
///   events
///     <event-id> <c|u|r>        # controllable|uncontrollable|recovery
///   states
///     <state-id> [initial] [marked]
///   transitions
///     <src> <event-id> <dst>
///   end
///
/// '#' starts a comment; blank lines are ignored. Exactly one state carries
/// `initial`. Events register into the shared table; re-declaring an event
/// with a different class letter is an error.
Automaton read_aut(std::istream& in, std::shared_ptr<EventTable> table,
                   const std::string& source = "<stream>");
Automaton read_aut_file(const std::filesystem::path& path, std::shared_ptr<EventTable> table);

/// Serialization is bit-exact reproducible: events in table order, states in
/// lexicographic order, transitions by (source, event table order).
void write_aut(std::ostream& out, const Automaton& a);
std::string to_aut_string(const Automaton& a);
void write_aut_file(const std::filesystem::path& path, const Automaton& a);

} // namespace recosync

#endif
