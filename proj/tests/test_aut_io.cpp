#include <doctest.h>

#include <sstream>

#include "recosync/aut_io.hpp"
#include "test_helpers.hpp"

using namespace recosync;

namespace {

const char* kSample = R"(# comment line
automaton demo
events
  go c        # trailing comment
  stop u
  reset r
states
  idle initial marked
  busy
transitions
  idle go busy
  busy stop idle
  busy reset idle
  idle reset idle
end
)";

} // namespace

TEST_CASE("aut round trip is stable byte for byte") {
    auto t = rt::make_table();
    std::istringstream in(kSample);
    Automaton a = read_aut(in, t, "sample");
    CHECK(a.name() == "demo");
    CHECK(a.num_states() == 2);
    CHECK(a.num_transitions() == 4);
    CHECK(a.marked(*a.find_state("idle")));
    CHECK_FALSE(a.marked(*a.find_state("busy")));
    CHECK(t->is_recovery(*t->find("reset")));

    std::string once = to_aut_string(a);
    auto t2 = rt::make_table();
    std::istringstream again(once);
    Automaton b = read_aut(again, t2, "sample2");
    CHECK(to_aut_string(b) == once);
}

TEST_CASE("serialization orders events by table, states lexicographically") {
    auto t = rt::make_table();
    Automaton c4 = rt::cerny4(t);
    std::string text = to_aut_string(c4);
    CHECK(text == "automaton cerny4\n"
                  "events\n"
                  "  a c\n"
                  "  b c\n"
                  "states\n"
                  "  0 initial\n"
                  "  1\n"
                  "  2\n"
                  "  3\n"
                  "transitions\n"
                  "  0 a 1\n"
                  "  0 b 1\n"
                  "  1 a 1\n"
                  "  1 b 2\n"
                  "  2 a 2\n"
                  "  2 b 3\n"
                  "  3 a 3\n"
                  "  3 b 0\n"
                  "end\n");
}

TEST_CASE("parse errors carry the source position") {
    auto t = rt::make_table();

    auto expect_error = [&](const char* text, const char* needle) {
        std::istringstream in(text);
        try {
            read_aut(in, t, "bad");
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_error("automaton x\nevents\n  a q\nstates\n  0 initial\ntransitions\nend\n",
                 "unknown event class");
    expect_error("automaton x\nevents\nstates\n  0 initial\n  0\ntransitions\nend\n",
                 "duplicate state");
    expect_error("automaton x\nevents\nstates\n  0 initial\n  1 initial\ntransitions\nend\n",
                 "more than one initial");
    expect_error("automaton x\nevents\n  a c\nstates\n  0 initial\ntransitions\n  0 b 0\nend\n",
                 "unknown event");
    expect_error("automaton x\nevents\n  a c\nstates\n  0 initial\ntransitions\n  0 a 9\nend\n",
                 "unknown target state");
    expect_error("automaton x\nevents\n  a c\nstates\n  0\ntransitions\nend\n", "initial");
}

TEST_CASE("event class conflicts across files are load-time errors") {
    auto t = rt::make_table();
    std::istringstream one("automaton one\nevents\n  a c\nstates\n  0 initial\ntransitions\nend\n");
    read_aut(one, t, "one");
    std::istringstream two("automaton two\nevents\n  a u\nstates\n  0 initial\ntransitions\nend\n");
    CHECK_THROWS_AS(read_aut(two, t, "two"), InputError);
}

TEST_CASE("composite state names survive serialization") {
    auto t = rt::make_table();
    Automaton m1 = rt::machine(t, 1);
    Automaton m2 = rt::machine(t, 2);
    Automaton g = parallel(m1, m2);
    std::string text = to_aut_string(g);
    CHECK(text.find("automaton M1||M2\n") == 0);
    CHECK(text.find("  0|0 initial marked\n") != std::string::npos);

    auto t2 = rt::make_table();
    std::istringstream in(text);
    Automaton back = read_aut(in, t2, "roundtrip");
    CHECK(back.num_states() == 4);
    CHECK(to_aut_string(back) == text);
}
