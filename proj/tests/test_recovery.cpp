#include <doctest.h>

#include "test_helpers.hpp"

using namespace recosync;

TEST_CASE("make_recoverable wires every state to the initial one") {
    auto t = rt::make_table();
    Automaton m1 = rt::machine(t, 1);
    EventId r1 = t->intern("r1", EventClass::Recovery);

    Automaton rec = make_recoverable(m1, r1);
    CHECK(rec.num_states() == 2);
    CHECK(rec.next(0, r1) == 0); // selfloop at the initial state
    CHECK(rec.next(1, r1) == 0);
    CHECK(is_sync_word(rec, Word{r1}, rec.initial()));
    auto shortest = shortest_sync_word(rec, rec.initial());
    CHECK(shortest == Word{r1});

    SUBCASE("buffers transform the same way") {
        Automaton b1 = rt::buffer(t, 1);
        EventId rB1 = t->intern("rB1", EventClass::Recovery);
        Automaton rb = make_recoverable(b1, rB1);
        CHECK(rb.next(*rb.find_state("F"), rB1) == rb.find_state("E"));
        CHECK(is_sync_word(rb, Word{rB1}, rb.initial()));
    }
    SUBCASE("single-state automata") {
        auto t2 = rt::make_table();
        EventId r = t2->intern("r", EventClass::Recovery);
        AutomatonBuilder b("one", t2);
        b.add_state("q", true);
        b.set_initial(0);
        Automaton one = make_recoverable(b.build(), r);
        CHECK(one.num_transitions() == 1);
        CHECK(is_sync_word(one, {}, StateId{0}));
        CHECK(is_sync_word(one, Word{r}, StateId{0}));
    }
    SUBCASE("rejects events already present or of the wrong class") {
        CHECK_THROWS_AS(make_recoverable(rec, r1), InputError);
        EventId c = t->intern("c_evt", EventClass::Controllable);
        CHECK_THROWS_AS(make_recoverable(m1, c), InputError);
    }
}

TEST_CASE("stripping recovery events undoes the transform up to language equality") {
    auto t = rt::make_table();
    Automaton m1 = rt::machine(t, 1);
    EventId r1 = t->intern("r1", EventClass::Recovery);
    Automaton rec = make_recoverable(m1, r1);
    Automaton stripped = remove_recovery_events(rec);
    CHECK(language_equal(stripped, m1, LanguageMode::Generated).equal);
    CHECK(language_equal(stripped, m1, LanguageMode::Marked).equal);
    CHECK(stripped.alphabet().size() == m1.alphabet().size());
}

TEST_CASE("make_recoverable_set transforms plants and specs with fresh events") {
    auto t = rt::make_table();
    std::vector<Automaton> plants{rt::machine(t, 1), rt::machine(t, 2), rt::machine(t, 3)};
    std::vector<Automaton> specs{rt::buffer(t, 1), rt::buffer(t, 2)};

    auto set = make_recoverable_set(plants, specs,
                                    {{"M1", "r1"},
                                     {"M2", "r2"},
                                     {"M3", "r3"},
                                     {"B1", "rB1"},
                                     {"B2", "rB2"}});
    CHECK(set.bindings.size() == 5);
    CHECK(set.bindings[0].automaton_name == "M1");
    CHECK(set.bindings[0].recovery_event == "r1");
    CHECK(set.bindings[0].kind == RecoveryBinding::Kind::Plant);
    CHECK(set.bindings[3].kind == RecoveryBinding::Kind::Specification);
    CHECK(t->recovery_events().size() == 5);
    for (const auto& a : set.plants)
        CHECK(shortest_sync_word(a, a.initial())->size() == 1);

    SUBCASE("default event names use the r_ prefix") {
        auto t2 = rt::make_table();
        std::vector<Automaton> ps{rt::machine(t2, 1)};
        auto s2 = make_recoverable_set(ps, {});
        CHECK(s2.bindings[0].recovery_event == "r_M1");
        CHECK(t2->find("r_M1").has_value());
    }
    SUBCASE("duplicate automaton names are rejected") {
        auto t2 = rt::make_table();
        std::vector<Automaton> ps{rt::machine(t2, 1), rt::machine(t2, 1).renamed("M1")};
        CHECK_THROWS_AS(make_recoverable_set(ps, {}), InputError);
    }
    SUBCASE("empty input gives empty output") {
        auto s2 = make_recoverable_set({}, {});
        CHECK(s2.plants.empty());
        CHECK(s2.specs.empty());
        CHECK(s2.bindings.empty());
    }
}

TEST_CASE("compositions of transformed components synchronize on every permutation") {
    auto t = rt::make_table();
    std::vector<Automaton> plants{rt::machine(t, 1), rt::machine(t, 2)};
    auto set = make_recoverable_set(plants, {}, {{"M1", "r1"}, {"M2", "r2"}});
    Automaton g = parallel(set.plants[0], set.plants[1]);
    std::vector<EventId> rec{*t->find("r1"), *t->find("r2")};
    for (const auto& w : recovery_permutations(*t, rec))
        CHECK(is_sync_word(g, w, g.initial()));
}
