#include <doctest.h>

#include <sstream>

#include "recosync/recovery.hpp"
#include "recosync/scenario.hpp"
#include "test_helpers.hpp"

using namespace recosync;

namespace {

// Full recovery-transformed transfer line with both supervisors and the
// composed local plants, ready for scripted runs.
struct Loop {
    std::shared_ptr<EventTable> table;
    ClosedLoop loop;
};

Loop make_loop() {
    auto table = rt::make_table();
    std::vector<Automaton> machines{rt::machine(table, 1), rt::machine(table, 2),
                                    rt::machine(table, 3)};
    std::vector<Automaton> buffers{rt::buffer(table, 1), rt::buffer(table, 2)};
    auto rec = make_recoverable_set(machines, buffers,
                                    {{"M1", "r1"},
                                     {"M2", "r2"},
                                     {"M3", "r3"},
                                     {"B1", "rB1"},
                                     {"B2", "rB2"}});
    SynthesisProblem problem{rec.plants, rec.specs, SynthesisMode::LocalModular};
    auto synth = synthesize(problem);

    std::vector<Automaton> plants = rec.plants;
    for (const auto& b : rec.specs)
        plants.push_back(b);
    const Automaton* g1_parts[2] = {&rec.plants[0], &rec.plants[1]};
    const Automaton* g2_parts[2] = {&rec.plants[1], &rec.plants[2]};
    plants.push_back(parallel_many(g1_parts, "G1"));
    plants.push_back(parallel_many(g2_parts, "G2"));

    std::vector<SupervisorModel> sups;
    sups.push_back({synth.supervisors[0].supervisor.renamed("S1"),
                    *synth.supervisors[0].sync_word});
    sups.push_back({synth.supervisors[1].supervisor.renamed("S2"),
                    *synth.supervisors[1].sync_word});
    return Loop{table, ClosedLoop(std::move(plants), std::move(sups))};
}

} // namespace

TEST_CASE("attack and recovery walkthrough") {
    auto [table, loop] = make_loop();
    auto state = loop.initial_state();

    auto exec = [&](const char* ev) { state = loop.exec_event(state, table->require(ev)); };
    auto plant_at = [&](const char* name) {
        auto i = *loop.find_plant(name);
        return loop.plant(i).state_name(state.plant[i]);
    };
    auto sup_at = [&](const char* name) {
        auto i = *loop.find_supervisor(name);
        return loop.supervisor(i).automaton.state_name(state.supervisor[i]);
    };

    for (const char* ev : {"a1", "b1", "a2", "a1", "b2", "a3"})
        exec(ev);
    CHECK(plant_at("G1") == "1|0");
    CHECK(sup_at("S1") == "1|0|E");
    CHECK(sup_at("S2") == "0|1|E");

    // the hidden completion desynchronizes S1
    std::size_t s1 = *loop.find_supervisor("S1");
    state = loop.exec_event(state, table->require("b1"), {&s1, 1});
    CHECK(plant_at("G1") == "0|0");
    CHECK(plant_at("B1") == "F");
    CHECK(sup_at("S1") == "1|0|E");
    REQUIRE(state.hidden.size() == 1);
    CHECK(state.hidden[0].supervisors == std::vector<std::size_t>{s1});

    SUBCASE("the stale estimate blocks the line") {
        auto enabled = loop.enabled_now(state);
        auto has = [&](const char* ev) {
            return std::find(enabled.begin(), enabled.end(), table->require(ev)) != enabled.end();
        };
        CHECK_FALSE(has("a1"));
        CHECK_FALSE(has("a2"));
        CHECK(has("b3")); // the part already on M3 still finishes
        CHECK(has("r1")); // the recovery channel stays open
        CHECK(loop.control_deadlocked(state));
        CHECK_THROWS_AS(loop.exec_event(state, table->require("a2")), ControlViolation);
    }

    SUBCASE("recovering S1 resets its scope and leaves S2 in place") {
        auto [next, word] = loop.recover(state, s1);
        state = next;
        CHECK(word == table->parse_word("r1 r2 rB1"));
        CHECK(sup_at("S1") == "0|0|E");
        CHECK(plant_at("G1") == "0|0");
        CHECK(plant_at("M1") == "0");
        CHECK(plant_at("B1") == "E");
        CHECK(sup_at("S2") == "0|1|E");
        CHECK(plant_at("G2") == "0|1");
        CHECK_FALSE(loop.control_deadlocked(state));
        // estimate equals plant-side truth again
        std::size_t i = *loop.find_supervisor("S1");
        Word proj = project_word(state.history, loop.supervisor(i).automaton);
        CHECK(step(loop.supervisor(i).automaton, loop.supervisor(i).automaton.initial(), proj) ==
              state.supervisor[i]);
    }

    SUBCASE("recover all resets every scope") {
        auto [next, word] = loop.recover(state, std::nullopt);
        state = next;
        CHECK(sup_at("S1") == "0|0|E");
        CHECK(sup_at("S2") == "0|0|E");
        CHECK(plant_at("M3") == "0");
        CHECK(word.size() == 6); // both words, shared events replayed per scope
    }
}

TEST_CASE("recover on a synchronized pair is a reset, not a no-op") {
    auto [table, loop] = make_loop();
    auto state = loop.initial_state();
    state = loop.exec_event(state, table->require("a1"));
    auto [next, word] = loop.recover(state, *loop.find_supervisor("S1"));
    CHECK(next.plant[*loop.find_plant("M1")] == loop.plant(*loop.find_plant("M1")).initial());
    CHECK(next.supervisor[0] == loop.supervisor(0).automaton.initial());
}

TEST_CASE("physical impossibility and hidden-recovery rejection") {
    auto [table, loop] = make_loop();
    auto state = loop.initial_state();
    CHECK_THROWS_AS(loop.exec_event(state, table->require("b1")), PhysicalImpossibility);
    std::size_t s1 = 0;
    CHECK_THROWS_AS(loop.exec_event(state, table->require("r1"), {&s1, 1}), InputError);
}

TEST_CASE("enabled_now: uncontrollable and recovery events need plants only") {
    auto [table, loop] = make_loop();
    auto state = loop.initial_state();
    auto enabled = loop.enabled_now(state);
    auto has = [&](const char* ev) {
        return std::find(enabled.begin(), enabled.end(), table->require(ev)) != enabled.end();
    };
    CHECK(has("a1"));
    CHECK_FALSE(has("b1")); // machine idle
    for (const char* r : {"r1", "r2", "r3", "rB1", "rB2"})
        CHECK(has(r));
    CHECK_FALSE(loop.control_deadlocked(state));
}

TEST_CASE("scenario parsing and execution") {
    SUBCASE("empty scenario passes with an empty run") {
        auto [table, loop] = make_loop();
        std::istringstream in("# nothing but comments\n\n");
        auto sc = parse_scenario(in, "empty");
        auto outcome = run_scenario(loop, sc);
        CHECK(outcome.passed());
        CHECK(outcome.assertions == 0);
    }
    SUBCASE("transcripts are byte-identical across runs") {
        auto [table, loop] = make_loop();
        std::istringstream in("exec a1\nassert-sup S1 1|0|E\nrecover S1\n");
        auto sc = parse_scenario(in, "s");
        auto one = run_scenario(loop, sc);
        auto two = run_scenario(loop, sc);
        CHECK(one.transcript == two.transcript);
        CHECK(one.passed());
    }
    SUBCASE("failed assertions are recorded and the run continues") {
        auto [table, loop] = make_loop();
        std::istringstream in("exec a1\nassert-sup S1 0|0|E\nassert-sup S1 1|0|E\n");
        auto sc = parse_scenario(in, "s");
        auto outcome = run_scenario(loop, sc);
        CHECK_FALSE(outcome.passed());
        CHECK(outcome.assertions == 2);
        CHECK(outcome.failures == 1);
        CHECK(outcome.transcript.find("ASSERT FAILED (line 2)") != std::string::npos);
    }
    SUBCASE("resolution failures abort with the line number") {
        auto [table, loop] = make_loop();
        std::istringstream in("exec nosuch\n");
        auto sc = parse_scenario(in, "s");
        try {
            run_scenario(loop, sc);
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        }
    }
    SUBCASE("syntax errors carry the position") {
        std::istringstream in("exec\n");
        CHECK_THROWS_WITH_AS(parse_scenario(in, "s"), doctest::Contains("s:1"), InputError);
    }
}
