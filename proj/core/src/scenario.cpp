#include "recosync/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace recosync {

namespace {

std::string strip(const std::string& line) {
    auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

Scenario parse_scenario(std::istream& in, const std::string& source) {
    Scenario sc;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty())
            continue;
        std::istringstream is(line);
        std::vector<std::string> tok;
        std::string t;
        while (is >> t)
            tok.push_back(t);

        Directive d;
        d.line = lineno;
        if (tok[0] == "exec") {
            d.kind = Directive::Kind::Exec;
            if (tok.size() != 2 && tok.size() != 4)
                fail(source, lineno, "expected 'exec <event> [hide <sups>|all]'");
            d.arg0 = tok[1];
            if (tok.size() == 4) {
                if (tok[2] != "hide")
                    fail(source, lineno, "expected 'hide' after event");
                if (tok[3] == "all")
                    d.hide_all = true;
                else
                    d.hide = split_commas(tok[3]);
                if (!d.hide_all && d.hide.empty())
                    fail(source, lineno, "empty hide list");
            }
        } else if (tok[0] == "recover") {
            d.kind = Directive::Kind::Recover;
            if (tok.size() != 2)
                fail(source, lineno, "expected 'recover <sup>|all'");
            if (tok[1] == "all")
                d.recover_all = true;
            else
                d.arg0 = tok[1];
        } else if (tok[0] == "assert-plant" || tok[0] == "assert-sup") {
            d.kind = tok[0] == "assert-plant" ? Directive::Kind::AssertPlant
                                              : Directive::Kind::AssertSup;
            if (tok.size() != 3)
                fail(source, lineno, "expected '" + tok[0] + " <name> <state>'");
            d.arg0 = tok[1];
            d.arg1 = tok[2];
        } else if (tok[0] == "assert-enabled") {
            d.kind = Directive::Kind::AssertEnabled;
            if (tok.size() != 3 || (tok[2] != "true" && tok[2] != "false"))
                fail(source, lineno, "expected 'assert-enabled <event> true|false'");
            d.arg0 = tok[1];
            d.arg1 = tok[2];
        } else if (tok[0] == "assert-deadlock") {
            d.kind = Directive::Kind::AssertDeadlock;
            if (tok.size() != 1)
                fail(source, lineno, "'assert-deadlock' takes no arguments");
        } else {
            fail(source, lineno, "unknown directive '" + tok[0] + "'");
        }
        sc.directives.push_back(std::move(d));
    }
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return parse_scenario(in, path);
}

namespace {

void dump_state(std::ostream& out, const ClosedLoop& loop, const ClosedLoop::State& s) {
    out << "  plants:";
    for (std::size_t i = 0; i < loop.num_plants(); ++i)
        out << " " << loop.plant(i).name() << "=" << loop.plant(i).state_name(s.plant[i]);
    out << "\n  sups:  ";
    for (std::size_t i = 0; i < loop.num_supervisors(); ++i)
        out << " " << loop.supervisor(i).automaton.name() << "="
            << loop.supervisor(i).automaton.state_name(s.supervisor[i]);
    out << "\n  enabled:";
    for (EventId e : loop.enabled_now(s))
        out << " " << loop.table()->name(e);
    out << "\n";
}

} // namespace

ScenarioOutcome run_scenario(const ClosedLoop& loop, const Scenario& scenario) {
    ScenarioOutcome outcome;
    std::ostringstream out;
    const auto& table = *loop.table();
    ClosedLoop::State state = loop.initial_state();

    out << "= initial\n";
    dump_state(out, loop, state);

    auto check = [&](bool ok, int line, const std::string& what) {
        ++outcome.assertions;
        if (ok) {
            out << "  assert ok: " << what << "\n";
        } else {
            ++outcome.failures;
            out << "  ASSERT FAILED (line " << line << "): " << what << "\n";
        }
    };

    for (const auto& d : scenario.directives) {
        switch (d.kind) {
        case Directive::Kind::Exec: {
            auto e = table.find(d.arg0);
            if (!e)
                throw InputError("line " + std::to_string(d.line) + ": unknown event '" + d.arg0 +
                                 "'");
            std::vector<std::size_t> hidden;
            if (d.hide_all) {
                for (std::size_t i = 0; i < loop.num_supervisors(); ++i)
                    hidden.push_back(i);
            } else {
                for (const auto& name : d.hide) {
                    auto idx = loop.find_supervisor(name);
                    if (!idx)
                        throw InputError("line " + std::to_string(d.line) +
                                         ": unknown supervisor '" + name + "'");
                    hidden.push_back(*idx);
                }
            }
            if (table.is_recovery(*e) && !hidden.empty())
                throw InputError("line " + std::to_string(d.line) +
                                 ": recovery events cannot be hidden");
            out << "= exec " << d.arg0;
            if (!hidden.empty()) {
                out << " hide";
                for (std::size_t i : hidden)
                    out << " " << loop.supervisor(i).automaton.name();
            }
            out << "\n";
            state = loop.exec_event(state, *e, hidden);
            dump_state(out, loop, state);
            break;
        }
        case Directive::Kind::Recover: {
            std::optional<std::size_t> scope;
            if (!d.recover_all) {
                scope = loop.find_supervisor(d.arg0);
                if (!scope)
                    throw InputError("line " + std::to_string(d.line) + ": unknown supervisor '" +
                                     d.arg0 + "'");
            }
            auto [next, word] = loop.recover(state, scope);
            state = std::move(next);
            out << "= recover " << (d.recover_all ? std::string("all") : d.arg0) << " via "
                << table.format_word(word) << "\n";
            dump_state(out, loop, state);
            break;
        }
        case Directive::Kind::AssertPlant: {
            auto idx = loop.find_plant(d.arg0);
            if (!idx)
                throw InputError("line " + std::to_string(d.line) + ": unknown plant '" + d.arg0 +
                                 "'");
            const auto& p = loop.plant(*idx);
            if (!p.find_state(d.arg1))
                throw InputError("line " + std::to_string(d.line) + ": unknown state '" + d.arg1 +
                                 "' of plant '" + d.arg0 + "'");
            check(p.state_name(state.plant[*idx]) == d.arg1, d.line,
                  "plant " + d.arg0 + " at " + d.arg1 + " (actual " +
                      p.state_name(state.plant[*idx]) + ")");
            break;
        }
        case Directive::Kind::AssertSup: {
            auto idx = loop.find_supervisor(d.arg0);
            if (!idx)
                throw InputError("line " + std::to_string(d.line) + ": unknown supervisor '" +
                                 d.arg0 + "'");
            const auto& a = loop.supervisor(*idx).automaton;
            if (!a.find_state(d.arg1))
                throw InputError("line " + std::to_string(d.line) + ": unknown state '" + d.arg1 +
                                 "' of supervisor '" + d.arg0 + "'");
            check(a.state_name(state.supervisor[*idx]) == d.arg1, d.line,
                  "sup " + d.arg0 + " at " + d.arg1 + " (actual " +
                      a.state_name(state.supervisor[*idx]) + ")");
            break;
        }
        case Directive::Kind::AssertEnabled: {
            auto e = table.find(d.arg0);
            if (!e)
                throw InputError("line " + std::to_string(d.line) + ": unknown event '" + d.arg0 +
                                 "'");
            auto enabled = loop.enabled_now(state);
            bool is_enabled = std::find(enabled.begin(), enabled.end(), *e) != enabled.end();
            bool expected = d.arg1 == "true";
            check(is_enabled == expected, d.line,
                  "event " + d.arg0 + " enabled=" + (expected ? "true" : "false"));
            break;
        }
        case Directive::Kind::AssertDeadlock: {
            check(loop.control_deadlocked(state), d.line, "control deadlock");
            break;
        }
        }
    }
    out << "= done: " << outcome.assertions << " assertions, " << outcome.failures << " failures\n";
    outcome.transcript = out.str();
    return outcome;
}

} // namespace recosync
