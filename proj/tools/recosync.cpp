#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "recosync/aut_io.hpp"
#include "recosync/closed_loop.hpp"
#include "recosync/recovery.hpp"
#include "recosync/scenario.hpp"
#include "recosync/synthesis.hpp"

#include "reproduce.hpp"

namespace fs = std::filesystem;
using namespace recosync;

namespace {

// Process exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kConflict = 2;
constexpr int kEmptySupervisor = 3;
constexpr int kAssertionFailed = 4;

const char* kFormatHelp = R"(FILE FORMATS

Automaton file (.aut), line oriented, '#' starts a comment:

  automaton <name>
  events
    <event-id> <c|u|r>        # controllable|uncontrollable|recovery
  states
    <state-id> [initial] [marked]
  transitions
    <src> <event-id> <dst>
  end

Exactly one state carries `initial`. Event classes are global: declaring an
event with different classes in two files is an error. Composite states
produced by composition are the component state ids joined with '|'.
Serialization is reproducible: events in table order, states and transitions
in lexicographic order.

Scenario file (.scn), line oriented, '#' starts a comment:

  exec <event> [hide <sup>[,<sup>...]|all]
  recover <sup>|all
  assert-plant <name> <state>
  assert-sup <name> <state>
  assert-enabled <event> true|false
  assert-deadlock

`exec ... hide` executes an event that the listed supervisors do not observe
(their estimates go stale); recovery events cannot be hidden. `recover`
replays the synchronizing word of the named supervisor (or of every
supervisor) as real, observable events. `assert-deadlock` asserts that no
controllable event is currently enabled, i.e. the control system cannot
initiate any further action.

EXIT CODES
  0 success    1 usage or input error    2 conflicting supervisors
  3 empty supervisor    4 scenario assertion failure
)";

std::vector<Automaton> load_all(const std::vector<std::string>& paths,
                                const std::shared_ptr<EventTable>& table) {
    std::vector<Automaton> out;
    out.reserve(paths.size());
    for (const auto& p : paths)
        out.push_back(read_aut_file(p, table));
    return out;
}

std::string word_or_dash(const EventTable& table, const std::optional<Word>& w) {
    return w ? table.format_word(*w) : "-";
}

void write_stats_tsv(std::ostream& out, const SynthesisResult& result, const EventTable& table) {
    out << "name\tstates\ttransitions\trecovery-transitions\tsync-word-length\tsync-word\n";
    for (const auto& rec : result.supervisors) {
        out << rec.name << "\t" << rec.states() << "\t" << rec.transitions() << "\t"
            << rec.recovery_transitions() << "\t";
        if (rec.sync_word)
            out << rec.sync_word->size();
        else
            out << "-";
        out << "\t" << word_or_dash(table, rec.sync_word) << "\n";
    }
}

int run_compose(const std::vector<std::string>& inputs, const std::string& output,
                std::string name) {
    auto table = std::make_shared<EventTable>();
    auto autos = load_all(inputs, table);
    std::vector<const Automaton*> ptrs;
    for (const auto& a : autos)
        ptrs.push_back(&a);
    Automaton composed = parallel_many(ptrs, std::move(name));
    if (output.empty() || output == "-")
        write_aut(std::cout, composed);
    else
        write_aut_file(output, composed);
    return kOk;
}

int run_make_recoverable(const std::vector<std::string>& inputs, const std::string& kind,
                         const std::string& event_override, const std::string& out_dir) {
    auto table = std::make_shared<EventTable>();
    auto autos = load_all(inputs, table);
    if (!event_override.empty() && autos.size() != 1)
        throw InputError("--event needs exactly one input automaton");

    std::map<std::string, std::string> overrides;
    if (!event_override.empty())
        overrides[autos.front().name()] = event_override;

    std::span<const Automaton> as_plants, as_specs;
    if (kind == "plant")
        as_plants = autos;
    else
        as_specs = autos;
    auto set = make_recoverable_set(as_plants, as_specs, overrides);

    fs::create_directories(out_dir);
    for (const auto* group : {&set.plants, &set.specs})
        for (const auto& a : *group)
            write_aut_file(fs::path(out_dir) / (a.name() + ".aut"), a);
    std::ofstream manifest(fs::path(out_dir) / "bindings.txt");
    for (const auto& b : set.bindings) {
        manifest << b.automaton_name << " " << b.recovery_event << " "
                 << (b.kind == RecoveryBinding::Kind::Plant ? "plant" : "spec") << "\n";
        std::cout << b.automaton_name << " " << b.recovery_event << " "
                  << (b.kind == RecoveryBinding::Kind::Plant ? "plant" : "spec") << "\n";
    }
    return kOk;
}

int run_syncword(const std::string& input, const std::string& target, std::size_t cutoff) {
    auto table = std::make_shared<EventTable>();
    Automaton a = read_aut_file(input, table);

    std::optional<StateId> target_state;
    if (!target.empty()) {
        target_state = a.find_state(target);
        if (!target_state)
            throw InputError("unknown target state '" + target + "'");
    }

    if (target_state) {
        std::optional<Word> w;
        const char* method = "exact-subset-bfs";
        try {
            w = shortest_sync_word(a, target_state, cutoff);
        } catch (const ExactSearchLimit&) {
            w = greedy_sync_word(a, target_state);
            method = "greedy-pairwise";
        }
        std::cout << "automaton: " << a.name() << " (" << a.num_states() << " states)\n";
        std::cout << "target: " << a.state_name(*target_state) << "\n";
        std::cout << "method: " << method << "\n";
        if (w) {
            std::cout << "word: " << table->format_word(*w) << "\n";
            std::cout << "length: " << w->size() << "\n";
        } else {
            std::cout << "word: none\n";
        }
        return kOk;
    }

    auto analysis = analyze_sync(a, cutoff);
    std::cout << "automaton: " << a.name() << " (" << a.num_states() << " states)\n";
    std::cout << "method: "
              << (analysis.method == SyncAnalysis::Method::ExactSubsetBfs ? "exact-subset-bfs"
                                                                          : "greedy-pairwise")
              << "\n";
    std::cout << "synchronizing: " << (analysis.synchronizing ? "true" : "false") << "\n";
    std::cout << "synchronizing-wrt-initial: " << (analysis.wrt_initial ? "true" : "false") << "\n";
    if (analysis.shortest_word) {
        std::cout << "word: " << table->format_word(*analysis.shortest_word) << "\n";
        std::cout << "length: " << analysis.shortest_word->size() << "\n";
    } else {
        std::cout << "word: none\n";
    }
    return kOk;
}

int run_synth(const std::string& mode, const std::vector<std::string>& plant_files,
              const std::vector<std::string>& spec_files, const std::string& out_dir,
              std::size_t cutoff, bool recovery_aware_blocking) {
    auto table = std::make_shared<EventTable>();
    SynthesisProblem problem;
    problem.plants = load_all(plant_files, table);
    problem.specs = load_all(spec_files, table);
    problem.mode = mode == "monolithic" ? SynthesisMode::Monolithic : SynthesisMode::LocalModular;

    auto result = synthesize(problem, cutoff,
                             recovery_aware_blocking ? BlockingRule::RecoveryAware
                                                     : BlockingRule::Classical);

    fs::create_directories(out_dir);
    for (const auto& rec : result.supervisors)
        write_aut_file(fs::path(out_dir) / (rec.name + ".aut"), rec.supervisor);
    {
        std::ofstream stats(fs::path(out_dir) / "stats.tsv");
        write_stats_tsv(stats, result, *table);
    }
    write_stats_tsv(std::cout, result, *table);

    std::ofstream verdict(fs::path(out_dir) / "nonconflict.txt");
    if (result.nonconflict) {
        verdict << "nonconflicting: " << (result.nonconflict->nonconflicting ? "true" : "false")
                << "\n";
        if (result.nonconflict->witness)
            verdict << "counterexample: " << table->format_word(*result.nonconflict->witness)
                    << "\n";
        std::cout << "nonconflicting: " << (result.nonconflict->nonconflicting ? "true" : "false")
                  << "\n";
    } else {
        verdict << "nonconflicting: not-checked\n";
    }

    for (const auto& rec : result.supervisors)
        if (rec.is_empty())
            std::cout << "supervisor " << rec.name << " is empty\n";

    if (result.any_empty)
        return kEmptySupervisor;
    if (result.nonconflict && !result.nonconflict->nonconflicting)
        return kConflict;
    return kOk;
}

int run_check_nonconflict(const std::vector<std::string>& inputs, bool trim_before_delete) {
    auto table = std::make_shared<EventTable>();
    auto sups = load_all(inputs, table);
    auto res = check_nonconflict(sups, trim_before_delete);
    std::cout << "nonconflicting: " << (res.nonconflicting ? "true" : "false") << "\n";
    if (res.witness)
        std::cout << "counterexample: " << table->format_word(*res.witness) << "\n";
    return res.nonconflicting ? kOk : kConflict;
}

int run_simulate(const std::vector<std::string>& plant_files,
                 const std::vector<std::string>& sup_files, const std::string& scenario_file,
                 const std::string& transcript_file, std::size_t cutoff) {
    auto table = std::make_shared<EventTable>();
    auto plants = load_all(plant_files, table);
    std::vector<SupervisorModel> sups;
    for (const auto& f : sup_files) {
        Automaton a = read_aut_file(f, table);
        auto sync = find_initial_sync_word(a, cutoff);
        if (!sync.word)
            throw InputError("no synchronizing word found for supervisor '" + a.name() + "'");
        sups.push_back({std::move(a), std::move(*sync.word)});
    }
    ClosedLoop loop(std::move(plants), std::move(sups));
    Scenario sc = parse_scenario_file(scenario_file);
    auto outcome = run_scenario(loop, sc);
    std::cout << outcome.transcript;
    if (!transcript_file.empty()) {
        std::ofstream out(transcript_file, std::ios::binary);
        if (!out)
            throw InputError("cannot write '" + transcript_file + "'");
        out << outcome.transcript;
    }
    return outcome.passed() ? kOk : kAssertionFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"recosync - supervisory control with synchronizing-word recovery"};
    app.footer(kFormatHelp);
    app.require_subcommand(1);

    std::size_t cutoff = kDefaultExactStateLimit;

    // compose
    auto* compose = app.add_subcommand("compose", "Parallel-compose automata");
    std::vector<std::string> compose_inputs;
    std::string compose_out, compose_name;
    compose->add_option("inputs", compose_inputs, "input .aut files")->required()->expected(-1);
    compose->add_option("-o,--out", compose_out, "output file ('-' for stdout)");
    compose->add_option("--name", compose_name, "name of the composed automaton");

    // make-recoverable
    auto* mkrec = app.add_subcommand("make-recoverable",
                                     "Add a recovery event driving every state to the initial one");
    std::vector<std::string> mkrec_inputs;
    std::string mkrec_kind, mkrec_event, mkrec_out = ".";
    mkrec->add_option("inputs", mkrec_inputs, "input .aut files")->required()->expected(-1);
    mkrec->add_option("--kind", mkrec_kind, "plant|spec")
        ->required()
        ->check(CLI::IsMember({"plant", "spec"}));
    mkrec->add_option("--event", mkrec_event, "recovery event id (single input only)");
    mkrec->add_option("--out", mkrec_out, "output directory");

    // syncword
    auto* syncword = app.add_subcommand("syncword", "Analyze synchronizing words");
    std::string syncword_input, syncword_target;
    syncword->add_option("input", syncword_input, "input .aut file")->required();
    syncword->add_option("--target", syncword_target, "require this landing state");
    syncword->add_option("--cutoff", cutoff, "state bound for the exact subset search");

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize supervisors");
    std::string synth_mode = "modular", synth_out = ".";
    std::vector<std::string> synth_plants, synth_specs;
    synth->add_option("--mode", synth_mode, "monolithic|modular")
        ->check(CLI::IsMember({"monolithic", "modular"}));
    synth->add_option("--plants", synth_plants, "plant .aut files")->required()->expected(-1);
    synth->add_option("--specs", synth_specs, "specification .aut files")->required()->expected(-1);
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--cutoff", cutoff, "state bound for the exact subset search");
    bool synth_recovery_aware = false;
    synth->add_flag("--recovery-aware-blocking", synth_recovery_aware,
                    "prune states that cannot reach a marked state without recovery events");

    // check-nonconflict
    auto* nonconf = app.add_subcommand("check-nonconflict",
                                       "Recovery-aware nonconflict test over supervisors");
    std::vector<std::string> nonconf_inputs;
    bool nonconf_alt = false;
    nonconf->add_option("inputs", nonconf_inputs, "supervisor .aut files")
        ->required()
        ->expected(-1);
    nonconf->add_flag("--trim-before-delete", nonconf_alt,
                      "trim each supervisor before deleting recovery transitions");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a closed-loop attack/recovery scenario");
    std::vector<std::string> sim_plants, sim_sups;
    std::string sim_scenario, sim_transcript;
    simulate->add_option("--plants", sim_plants, "plant .aut files")->required()->expected(-1);
    simulate->add_option("--sups", sim_sups, "supervisor .aut files")->required()->expected(-1);
    simulate->add_option("--scenario", sim_scenario, "scenario .scn file")->required();
    simulate->add_option("--transcript", sim_transcript, "write the transcript to this file");
    simulate->add_option("--cutoff", cutoff, "state bound for the exact subset search");

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "Re-run a bundled case study end to end");
    std::string repro_case, repro_mode = "modular", repro_fixtures = "fixtures";
    reproduce->add_option("case", repro_case, "small-factory|fms")
        ->required()
        ->check(CLI::IsMember({"small-factory", "fms"}));
    reproduce->add_option("--mode", repro_mode, "monolithic|modular (fms only)")
        ->check(CLI::IsMember({"monolithic", "modular"}));
    reproduce->add_option("--fixtures", repro_fixtures, "fixtures directory");
    reproduce->add_option("--cutoff", cutoff, "state bound for the exact subset search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (compose->parsed())
            return run_compose(compose_inputs, compose_out, compose_name);
        if (mkrec->parsed())
            return run_make_recoverable(mkrec_inputs, mkrec_kind, mkrec_event, mkrec_out);
        if (syncword->parsed())
            return run_syncword(syncword_input, syncword_target, cutoff);
        if (synth->parsed())
            return run_synth(synth_mode, synth_plants, synth_specs, synth_out, cutoff,
                             synth_recovery_aware);
        if (nonconf->parsed())
            return run_check_nonconflict(nonconf_inputs, nonconf_alt);
        if (simulate->parsed())
            return run_simulate(sim_plants, sim_sups, sim_scenario, sim_transcript, cutoff);
        if (reproduce->parsed()) {
            if (repro_case == "small-factory")
                return recosync::tools::reproduce_small_factory(repro_fixtures, cutoff);
            return recosync::tools::reproduce_fms(repro_fixtures, repro_mode, cutoff);
        }
    } catch (const PhysicalImpossibility& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ControlViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
