#include "recosync/aut_io.hpp"

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

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

Automaton read_aut(std::istream& in, std::shared_ptr<EventTable> table, const std::string& source) {
    if (!table)
        throw InputError("read_aut requires an event table");

    enum Section { Header, Events, States, Transitions, Done };
    Section section = Header;
    std::unique_ptr<AutomatonBuilder> builder;
    bool saw_initial = false;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty())
            continue;
        auto tok = tokens(line);

        if (section == Header) {
            if (tok.size() != 2 || tok[0] != "automaton")
                fail(source, lineno, "expected 'automaton <name>'");
            builder = std::make_unique<AutomatonBuilder>(tok[1], table);
            section = Events;
            continue;
        }
        if (tok[0] == "events" && tok.size() == 1 && section == Events) {
            continue;
        }
        if (tok[0] == "states" && tok.size() == 1) {
            if (section != Events)
                fail(source, lineno, "unexpected 'states' section");
            section = States;
            continue;
        }
        if (tok[0] == "transitions" && tok.size() == 1) {
            if (section != States)
                fail(source, lineno, "unexpected 'transitions' section");
            section = Transitions;
            continue;
        }
        if (tok[0] == "end" && tok.size() == 1) {
            if (section != Transitions && section != States)
                fail(source, lineno, "unexpected 'end'");
            section = Done;
            break;
        }

        switch (section) {
        case Events: {
            if (tok.size() != 2 || tok[1].size() != 1)
                fail(source, lineno, "expected '<event-id> <c|u|r>'");
            auto cls = class_from_letter(tok[1][0]);
            if (!cls)
                fail(source, lineno, "unknown event class '" + tok[1] + "'");
            try {
                builder->add_alphabet(table->intern(tok[0], *cls));
            } catch (const InputError& e) {
                fail(source, lineno, e.what());
            }
            break;
        }
        case States: {
            bool initial = false, marked = false;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (tok[i] == "initial")
                    initial = true;
                else if (tok[i] == "marked")
                    marked = true;
                else
                    fail(source, lineno, "unknown state attribute '" + tok[i] + "'");
            }
            try {
                StateId s = builder->add_state(tok[0], marked);
                if (initial) {
                    if (saw_initial)
                        fail(source, lineno, "more than one initial state");
                    builder->set_initial(s);
                    saw_initial = true;
                }
            } catch (const InputError& e) {
                fail(source, lineno, e.what());
            }
            break;
        }
        case Transitions: {
            if (tok.size() != 3)
                fail(source, lineno, "expected '<src> <event-id> <dst>'");
            auto src = builder->find_state(tok[0]);
            auto dst = builder->find_state(tok[2]);
            if (!src)
                fail(source, lineno, "unknown source state '" + tok[0] + "'");
            if (!dst)
                fail(source, lineno, "unknown target state '" + tok[2] + "'");
            auto ev = table->find(tok[1]);
            if (!ev)
                fail(source, lineno, "unknown event '" + tok[1] + "'");
            try {
                builder->add_transition(*src, *ev, *dst);
            } catch (const InputError& e) {
                fail(source, lineno, e.what());
            }
            break;
        }
        default:
            fail(source, lineno, "content outside any section");
        }
    }

    if (!builder)
        throw InputError(source + ": missing 'automaton' header");
    if (section != Done)
        throw InputError(source + ": missing 'end'");
    if (builder->num_states() > 0 && !saw_initial)
        throw InputError(source + ": no state is declared 'initial'");
    return builder->build();
}

Automaton read_aut_file(const std::filesystem::path& path, std::shared_ptr<EventTable> table) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    return read_aut(in, std::move(table), path.string());
}

void write_aut(std::ostream& out, const Automaton& a) {
    const auto& table = *a.table();
    out << "automaton " << a.name() << "\n";
    out << "events\n";
    for (EventId e : a.alphabet())
        out << "  " << table.name(e) << " " << class_letter(table.event_class(e)) << "\n";

    std::vector<StateId> order(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s)
        order[s] = s;
    std::sort(order.begin(), order.end(), [&](StateId x, StateId y) {
        return a.state_name(x) < a.state_name(y);
    });

    out << "states\n";
    for (StateId s : order) {
        out << "  " << a.state_name(s);
        if (!a.empty() && s == a.initial())
            out << " initial";
        if (a.marked(s))
            out << " marked";
        out << "\n";
    }
    out << "transitions\n";
    for (StateId s : order)
        for (const auto& t : a.out(s))
            out << "  " << a.state_name(s) << " " << table.name(t.event) << " "
                << a.state_name(t.target) << "\n";
    out << "end\n";
}

std::string to_aut_string(const Automaton& a) {
    std::ostringstream out;
    write_aut(out, a);
    return out.str();
}

void write_aut_file(const std::filesystem::path& path, const Automaton& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path.string() + "'");
    write_aut(out, a);
}

} // namespace recosync
