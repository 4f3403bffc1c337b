#ifndef RECOSYNC_ERRORS_HPP
#define RECOSYNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace recosync {

/// Malformed input: bad file, unknown name, violated precondition.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact subset search refused because the automaton exceeds the state bound.
class ExactSearchLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An executed event is not physically possible in some plant.
class PhysicalImpossibility : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A controllable event was executed against the veto of a consulted supervisor.
class ControlViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace recosync

#endif
