#include "arm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arm/arm_relations.hpp"
#include "arm/emergence.hpp"
#include "arm/report.hpp"
#include "arm/scenario_gen.hpp"
#include "arm/trace_lang.hpp"

namespace arm::cli {

namespace {

using report::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TraceAutomaton load_automaton(const std::string& path) {
    try {
        return parse_automaton(read_file(path));
    } catch (const ResourceError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

TraceLog load_log(const std::string& path, const Alphabet& alphabet) {
    try {
        return parse_log(read_file(path), alphabet, path);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

ModelChain load_chain(const std::string& rm, const std::string& dm, const std::string& im) {
    try {
        return ModelChain(load_automaton(rm), load_automaton(dm), load_automaton(im));
    } catch (const AlphabetMismatchError& e) {
        throw InputError(std::string("model chain: ") + e.what());
    }
}

struct Options {
    std::string format = "text";
    std::size_t state_budget = Limits{}.state_budget;

    bool machine() const { return format == "machine"; }
    Limits limits() const { return Limits{state_budget}; }
};

ExitCode verdict(bool clean) { return clean ? ExitCode::Clean : ExitCode::Violated; }

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abstraction refinement analysis of phase models and observed traces", "arm"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--state-budget", opt.state_budget, "Cap on states built by one determinization or product")
        ->check(CLI::PositiveNumber);

    std::string prev, next;
    auto* classify = app.add_subcommand("classify", "Classify the evolution step PREV -> NEXT");
    classify->add_option("PREV", prev)->required();
    classify->add_option("NEXT", next)->required();

    std::string rm, dm, im, log_path;
    auto* check = app.add_subcommand("check", "Verify the refinement chain RM >= DM >= IM");
    check->add_option("RM", rm)->required();
    check->add_option("DM", dm)->required();
    check->add_option("IM", im)->required();

    auto* analyze = app.add_subcommand("analyze", "Extract emergent behavior from an observed log");
    auto* decompose = app.add_subcommand("decompose", "Split each phase into concrete and extra behavior");
    for (auto* sub : {analyze, decompose}) {
        sub->add_option("RM", rm)->required();
        sub->add_option("DM", dm)->required();
        sub->add_option("IM", im)->required();
        sub->add_option("LOG", log_path)->required();
    }

    std::string aut_path;
    std::size_t max_len = 0;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "List accepted traces up to a length");
    enumerate_cmd->add_option("AUT", aut_path)->required();
    enumerate_cmd->add_option("--max-len", max_len, "Longest trace to list")->required();

    auto* canon = app.add_subcommand("canon", "Print the canonical minimal form of an automaton");
    canon->add_option("AUT", aut_path)->required();

    ScenarioConfig cfg;
    std::size_t extra_r = 0, extra_d = 0, extra_i = 0;
    std::string out_dir;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic scenario bundle");
    gen->add_option("--seed", cfg.seed, "RNG seed")->required();
    gen->add_option("--alphabet-size", cfg.alphabet_size, "Number of events (2-5)")->capture_default_str();
    gen->add_option("--states", cfg.states_per_model, "States of the requirements model (2-8)")
        ->capture_default_str();
    gen->add_option("--extra-requirements", extra_r, "Traces to inject outside rm");
    gen->add_option("--extra-design", extra_d, "Traces to inject in rm but outside dm");
    gen->add_option("--extra-implementation", extra_i, "Traces to inject in rm and dm but outside im");
    gen->add_option("--log-size", cfg.log_size, "Conforming traces sampled from im")->capture_default_str();
    gen->add_option("--max-len", cfg.max_len, "Longest sampled trace")->capture_default_str();
    gen->add_option("--out", out_dir, "Bundle directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return static_cast<int>(ExitCode::Clean);
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return static_cast<int>(ExitCode::Clean);
    } catch (const CLI::ParseError& e) {
        std::string what = e.what();
        std::replace(what.begin(), what.end(), '\n', ' ');
        err << "usage error: " << what << '\n';
        return static_cast<int>(ExitCode::InputError);
    }

    const Limits limits = opt.limits();
    try {
        if (classify->parsed()) {
            const auto p = load_automaton(prev);
            const auto n = load_automaton(next);
            if (!p.alphabet().same_symbols(n.alphabet()))
                throw InputError("PREV and NEXT declare different alphabets");
            const auto r = classify_evolution(p, n, limits);
            if (opt.machine())
                out << report::dump(report::envelope("classify", p.alphabet(), report::to_json(r, p.alphabet())));
            else
                out << report::render_text(r, p.alphabet());
            return static_cast<int>(verdict(r.refinement_holds));
        }
        if (check->parsed()) {
            const auto chain = load_chain(rm, dm, im);
            const auto r = check_chain(chain, limits);
            if (opt.machine())
                out << report::dump(report::envelope("check", chain.alphabet(), report::to_json(r, chain.alphabet())));
            else
                out << report::render_text(r, chain.alphabet());
            return static_cast<int>(verdict(r.chain_holds));
        }
        if (analyze->parsed() || decompose->parsed()) {
            const auto chain = load_chain(rm, dm, im);
            const auto& alphabet = chain.alphabet();
            const auto log = load_log(log_path, alphabet);
            const auto emergent = extract_emergent(log, chain, limits);
            if (analyze->parsed()) {
                const auto chain_report = check_chain(chain, limits);
                if (opt.machine())
                    out << report::dump(report::envelope("analyze", alphabet,
                                                         {{"chain", report::to_json(chain_report, alphabet)},
                                                          {"emergent", report::to_json(emergent, alphabet)}}));
                else
                    out << report::render_text(chain_report, alphabet) << report::render_text(emergent, alphabet);
            } else {
                const auto d = decompose_extended(chain, emergent, limits);
                if (opt.machine())
                    out << report::dump(report::envelope("decompose", alphabet,
                                                         {{"emergent", report::to_json(emergent, alphabet)},
                                                          {"decomposition", report::to_json(d, alphabet)}}));
                else
                    out << report::render_text(d, alphabet);
            }
            return static_cast<int>(verdict(emergent.emergent_traces.empty()));
        }
        if (enumerate_cmd->parsed()) {
            const auto aut = load_automaton(aut_path);
            const auto traces = enumerate(aut, max_len);
            if (opt.machine()) {
                json list = json::array();
                for (const auto& t : traces) list.push_back(report::trace_to_json(t, aut.alphabet()));
                out << report::dump(
                    report::envelope("enumerate", aut.alphabet(), {{"max_len", max_len}, {"traces", list}}));
            } else {
                for (const auto& t : traces) out << to_string(t, aut.alphabet()) << '\n';
            }
            return static_cast<int>(ExitCode::Clean);
        }
        if (canon->parsed()) {
            const auto aut = load_automaton(aut_path);
            const auto text = canonical_form(aut, limits);
            if (opt.machine())
                out << report::dump(report::envelope("canon", aut.alphabet(), {{"automaton", text}}));
            else
                out << text;
            return static_cast<int>(ExitCode::Clean);
        }
        if (gen->parsed()) {
            if (extra_r) cfg.extra_traces_per_phase[OriginPhase::RequirementsGap] = extra_r;
            if (extra_d) cfg.extra_traces_per_phase[OriginPhase::DesignGap] = extra_d;
            if (extra_i) cfg.extra_traces_per_phase[OriginPhase::ImplementationGap] = extra_i;
            const auto scenario = generate_scenario(cfg);
            write_bundle(scenario, cfg, out_dir);
            for (const auto& w : scenario.warnings) err << "warning: " << w << '\n';
            const auto& alphabet = scenario.chain.alphabet();
            json truth = json::array();
            for (const auto& [t, phase] : scenario.injected)
                truth.push_back({{"trace", report::trace_to_json(t, alphabet)}, {"origin", std::string(to_string(phase))}});
            if (opt.machine()) {
                out << report::dump(report::envelope("gen", alphabet,
                                                     {{"seed", cfg.seed},
                                                      {"rng", std::string(Rng::kName)},
                                                      {"rm", serialize(scenario.chain.rm())},
                                                      {"dm", serialize(scenario.chain.dm())},
                                                      {"im", serialize(scenario.chain.im())},
                                                      {"log_size", scenario.log.traces.size()},
                                                      {"injected", truth},
                                                      {"warnings", scenario.warnings}}));
            } else {
                out << "wrote scenario bundle to " << out_dir << '\n'
                    << "  rng " << Rng::kName << ", seed " << cfg.seed << '\n'
                    << "  log traces: " << scenario.log.traces.size() << " (" << scenario.injected.size()
                    << " injected)\n";
            }
            return static_cast<int>(ExitCode::Clean);
        }
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Resource);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::InputError);
    }
    err << "usage error: no subcommand\n";
    return static_cast<int>(ExitCode::InputError);
}

}  // namespace arm::cli
