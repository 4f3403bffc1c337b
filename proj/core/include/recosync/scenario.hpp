#ifndef RECOSYNC_SCENARIO_HPP
#define RECOSYNC_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "recosync/closed_loop.hpp"

namespace recosync {

/// One line of a `.scn` script:
///   exec <event> [hide <sup>[,<sup>...]|all]
///   recover <sup>|all
///   assert-plant <name> <state>
///   assert-sup <name> <state>
///   assert-enabled <event> true|false
///   assert-deadlock
/// '#' comments and blank lines are ignored. Names resolve against the loaded
/// models when the scenario runs; a resolution failure aborts with the line.
struct Directive {
    enum class Kind { Exec, Recover, AssertPlant, AssertSup, AssertEnabled, AssertDeadlock };
    Kind kind;
    int line = 0;
    std::string arg0;               // event / supervisor / automaton name
    std::string arg1;               // state name / "true"/"false"
    bool hide_all = false;          // exec ... hide all
    bool recover_all = false;       // recover all
    std::vector<std::string> hide;  // exec ... hide S1,S2
};

struct Scenario {
    std::vector<Directive> directives;
};

Scenario parse_scenario(std::istream& in, const std::string& source = "<scenario>");
Scenario parse_scenario_file(const std::string& path);

struct ScenarioOutcome {
    std::string transcript; ///< byte-identical for identical inputs
    std::size_t assertions = 0;
    std::size_t failures = 0;
    bool passed() const { return failures == 0; }
};

/// Executes the directives in order. Assertion failures are recorded and the
/// run continues; resolution failures throw InputError with position info.
ScenarioOutcome run_scenario(const ClosedLoop& loop, const Scenario& scenario);

} // namespace recosync

#endif
