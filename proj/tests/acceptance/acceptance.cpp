// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Sizes, seeds and time budgets are pinned below.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arm/arm_relations.hpp"
#include "arm/cli.hpp"
#include "arm/emergence.hpp"
#include "arm/scenario_gen.hpp"
#include "arm/trace_lang.hpp"
#include "oracle/brute_force.hpp"

using namespace arm;

namespace {

constexpr std::size_t kRandomPairs = 1000;
constexpr std::size_t kMaxStates = 5;
constexpr std::size_t kMaxAlphabet = 3;
constexpr std::uint64_t kPairSeed = 20261016;
constexpr std::size_t kConformingChains = 200;
constexpr std::size_t kInjectedScenarios = 200;
constexpr double kBudgetPairsSeconds = 60.0;
constexpr double kBudgetConformingSeconds = 30.0;
constexpr double kBudgetScenarioSeconds = 60.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects the first failure message of one criterion.
struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

void report(int number, const std::string& title, const Verdict& v, const std::string& summary) {
    std::cout << "criterion " << number << " [" << title << "]: " << (v.ok ? "PASS" : "FAIL") << " (" << summary
              << ")";
    if (!v.ok) std::cout << ": " << v.detail;
    std::cout << std::endl;
}

std::string fixed(double x) {
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << x;
    return s.str();
}

struct Pair {
    TraceAutomaton a, b;
};

std::vector<Pair> random_population() {
    Rng rng(kPairSeed);
    std::vector<Pair> out;
    for (std::size_t i = 0; i < kRandomPairs; ++i) {
        const auto alpha = oracle::random_alphabet(rng, kMaxAlphabet);
        auto a = oracle::random_nfa(rng, alpha, kMaxStates);
        auto b = oracle::random_nfa(rng, alpha, kMaxStates);
        out.push_back({std::move(a), std::move(b)});
    }
    return out;
}

/// True iff `c` accepts exactly the words w with f(w in a, w in b), checked
/// by the brute-force product search.
bool same_as(const TraceAutomaton& c, const TraceAutomaton& a, const TraceAutomaton& b,
             const std::function<bool(bool, bool)>& f) {
    const std::vector<const TraceAutomaton*> auts{&a, &b, &c};
    return !oracle::exists_word(auts, oracle::product_bound(auts),
                                [&](const std::vector<bool>& in) { return in[2] != f(in[0], in[1]); });
}

bool counterexample_ok(const InclusionResult& r, const TraceAutomaton& super, const TraceAutomaton& sub) {
    if (!r.counterexample) return true;
    return oracle::accepts(sub, r.counterexample->trace) && !oracle::accepts(super, r.counterexample->trace);
}

Verdict criterion_language_ops(const std::vector<Pair>& pop, double& elapsed) {
    const auto start = Clock::now();
    Verdict v;
    for (std::size_t i = 0; i < pop.size() && v.ok; ++i) {
        const auto& [a, b] = pop[i];
        const std::string at = "pair " + std::to_string(i) + ": ";
        const auto bound = oracle::reachable_subset_count(a) * oracle::reachable_subset_count(b);
        v.require(same_as(combine(SetOp::Union, a, b), a, b, [](bool x, bool y) { return x || y; }), at + "union");
        v.require(same_as(combine(SetOp::Intersection, a, b), a, b, [](bool x, bool y) { return x && y; }),
                  at + "intersection");
        v.require(same_as(combine(SetOp::Difference, a, b), a, b, [](bool x, bool y) { return x && !y; }),
                  at + "difference");
        v.require(same_as(complement(a), a, b, [](bool x, bool) { return !x; }), at + "complement");

        const bool a_minus_b = oracle::exists_word(a, b, bound, [](bool x, bool y) { return x && !y; });
        const bool b_minus_a = oracle::exists_word(a, b, bound, [](bool x, bool y) { return !x && y; });
        const auto ab = includes(a, b);
        const auto ba = includes(b, a);
        v.require(ab.holds() == !b_minus_a, at + "includes(a, b)");
        v.require(ba.holds() == !a_minus_b, at + "includes(b, a)");
        v.require(counterexample_ok(ab, a, b) && counterexample_ok(ba, b, a), at + "inclusion counterexample");
        v.require(equivalent(a, b) == (!a_minus_b && !b_minus_a), at + "equivalent");

        // Shortest, then least, counterexample against plain enumeration.
        if (ab.counterexample && ab.counterexample->trace.size() <= 4) {
            const auto least = oracle::least_word(a, b, 4, [](bool x, bool y) { return !x && y; });
            v.require(least && *least == ab.counterexample->trace, at + "counterexample is not shortlex-least");
        }
    }
    elapsed = seconds_since(start);
    v.require(elapsed < kBudgetPairsSeconds, "over the time budget");
    return v;
}

Verdict criterion_classification(const std::vector<Pair>& pop, double& elapsed, std::array<int, 5>& classes) {
    const auto start = Clock::now();
    Verdict v;
    for (std::size_t i = 0; i < pop.size() && v.ok; ++i) {
        const auto& [prev, next] = pop[i];
        const std::string at = "pair " + std::to_string(i) + ": ";
        const auto r = classify_evolution(prev, next);
        const auto bound = oracle::reachable_subset_count(prev) * oracle::reachable_subset_count(next);
        const bool prev_only = oracle::exists_word(prev, next, bound, [](bool p, bool n) { return p && !n; });
        const bool next_only = oracle::exists_word(prev, next, bound, [](bool p, bool n) { return !p && n; });
        const bool shared = oracle::exists_word(prev, next, bound, [](bool p, bool n) { return p && n; });
        v.require(r.abstraction_holds == !prev_only, at + "abstraction flag");
        v.require(r.refinement_holds == !next_only, at + "refinement flag");
        v.require(r.total_change_holds == !shared, at + "total change flag");
        v.require(r.strict_evolution_holds == (shared && prev_only && next_only), at + "strict evolution flag");
        const int flags = r.abstraction_holds + r.refinement_holds + r.total_change_holds + r.strict_evolution_holds;
        v.require(flags >= 1, at + "no flag set");
        if (flags > 1) {
            const bool identical = !prev_only && !next_only;
            const bool prev_empty = !oracle::exists_word(prev, prev, bound, [](bool p, bool) { return p; });
            const bool next_empty = !oracle::exists_word(next, next, bound, [](bool n, bool) { return n; });
            v.require(identical || prev_empty || next_empty, at + "undocumented flag overlap");
        }
        ++classes[static_cast<int>(r.canonical)];
    }
    elapsed = seconds_since(start);
    v.require(elapsed < kBudgetPairsSeconds, "over the time budget");
    return v;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

/// `phases` selects which origins receive `extra` injected traces: bit 0
/// requirements, bit 1 design, bit 2 implementation.
ScenarioConfig scenario_config(std::uint64_t seed, std::size_t extra, unsigned phases) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    cfg.alphabet_size = 2 + seed % 4;
    cfg.states_per_model = 2 + seed % 7;
    cfg.log_size = 20;
    cfg.max_len = 6;
    for (unsigned p = 0; p < 3; ++p)
        if (extra > 0 && (phases >> p & 1)) cfg.extra_traces_per_phase[OriginPhase(p)] = extra;
    return cfg;
}

/// Union of the concrete and extra parts equals each phase model and the
/// design's extra part misses the requirements, by brute-force search.
void check_decomposition(const ModelChain& chain, const EmergentReport& report, Verdict& v, const std::string& at) {
    const auto d = decompose_extended(chain, report);
    auto union_is = [](const TraceAutomaton& x, const TraceAutomaton& y, const TraceAutomaton& model) {
        const std::vector<const TraceAutomaton*> auts{&x, &y, &model};
        return !oracle::exists_word(auts, oracle::product_bound(auts),
                                    [](const std::vector<bool>& in) { return (in[0] || in[1]) != in[2]; });
    };
    v.require(union_is(d.concrete_d, d.extra_d, chain.dm()), at + "concrete_d + extra_d differs from dm");
    v.require(union_is(d.concrete_i, d.extra_i, chain.im()), at + "concrete_i + extra_i differs from im");
    const std::vector<const TraceAutomaton*> pair{&d.extra_d, &chain.rm()};
    v.require(!oracle::exists_word(pair, oracle::product_bound(pair),
                                   [](const std::vector<bool>& in) { return in[0] && in[1]; }),
              at + "extra_d meets rm");
}

Verdict criterion_guarantee(double& elapsed, Verdict& decomposition, std::size_t& chains_checked) {
    const auto start = Clock::now();
    Verdict v;
    const auto dir = std::filesystem::temp_directory_path() / "arm_acceptance_guarantee";
    for (std::uint64_t seed = 0; seed < kConformingChains && v.ok; ++seed) {
        const auto cfg = scenario_config(1000 + seed, 0, 0);
        const auto s = generate_scenario(cfg);
        const std::string at = "seed " + std::to_string(cfg.seed) + ": ";
        v.require(check_chain(s.chain).chain_holds, at + "generated chain does not refine");
        std::filesystem::remove_all(dir);
        write_bundle(s, cfg, dir);
        std::string out;
        const int code = run_cli({"--format", "machine", "analyze", (dir / "rm.aut").string(), (dir / "dm.aut").string(),
                                  (dir / "im.aut").string(), (dir / "log.txt").string()},
                                 &out);
        v.require(code == 0, at + "analyze exit code " + std::to_string(code));
        v.require(out.find("\"emergent_traces\": []") != std::string::npos, at + "analyze reported emergent traces");
        v.require(extract_emergent(s.log, s.chain).emergent_traces.empty(), at + "emergent set not empty");
        check_decomposition(s.chain, extract_emergent(s.log, s.chain), decomposition, at);
        ++chains_checked;
    }
    std::filesystem::remove_all(dir);
    elapsed = seconds_since(start);
    v.require(elapsed < kBudgetConformingSeconds, "over the time budget");
    return v;
}

CaseClassification::Label brute_force_label(const ModelChain& chain, const std::set<Trace>& ebt,
                                            std::array<ModelVsEmergent, 3>& rel) {
    const std::array<const TraceAutomaton*, 3> models{&chain.rm(), &chain.dm(), &chain.im()};
    for (std::size_t i = 0; i < 3; ++i) {
        bool meets = false, within = true;
        for (const auto& t : ebt) {
            const bool in = oracle::accepts(*models[i], t);
            meets |= in;
            within &= in;
        }
        rel[i] = {meets, !oracle::accepts_outside(*models[i], ebt), within};
    }
    auto strict = [](const ModelVsEmergent& m) { return m.meets && !m.model_within_ebt && !m.ebt_within_model; };
    using L = CaseClassification::Label;
    if (ebt.empty()) return L::NoEmergence;
    if (strict(rel[0])) return L::Case1;
    if (rel[0].ebt_within_model && strict(rel[1])) return L::Case2;
    if (rel[1].ebt_within_model && strict(rel[2])) return L::Case3;
    return L::Unclassified;
}

Verdict criterion_localization(double& elapsed, Verdict& decomposition, std::size_t& chains_checked,
                               std::array<std::size_t, 3>& per_phase, std::array<int, 5>& labels) {
    const auto start = Clock::now();
    Verdict v;
    for (std::uint64_t seed = 0; seed < kInjectedScenarios && v.ok; ++seed) {
        // Cycles through every non-empty subset of phases.
        const auto cfg = scenario_config(5000 + seed, 2, 1 + seed % 7);
        const auto s = generate_scenario(cfg);
        const std::string at = "seed " + std::to_string(cfg.seed) + ": ";
        const auto report = extract_emergent(s.log, s.chain);
        for (const auto& [t, phase] : s.injected) {
            v.require(per_trace_origin(t, s.chain) == phase, at + "per_trace_origin missed an injected origin");
            const auto it = report.per_trace.find(t);
            v.require(it != report.per_trace.end() && it->second.origin == phase, at + "report origin mismatch");
            ++per_phase[static_cast<int>(phase)];
        }
        std::set<Trace> ebt;
        for (const auto& t : s.log.traces)
            if (!oracle::accepts(s.chain.im(), t)) ebt.insert(t);
        v.require(std::vector<Trace>(ebt.begin(), ebt.end()) == report.emergent_traces, at + "emergent set mismatch");

        std::array<ModelVsEmergent, 3> rel;
        const auto expected = brute_force_label(s.chain, ebt, rel);
        const auto& c = report.case_result;
        v.require(c.rm == rel[0] && c.dm == rel[1] && c.im == rel[2], at + "case conjuncts differ from brute force");
        v.require(c.label == expected, at + "case label differs from brute force");
        ++labels[static_cast<int>(c.label)];
        check_decomposition(s.chain, report, decomposition, at);
        ++chains_checked;
    }
    elapsed = seconds_since(start);
    v.require(elapsed < kBudgetScenarioSeconds, "over the time budget");
    for (std::size_t p = 0; p < 3; ++p)
        v.require(per_phase[p] > 0, "no trace injected for phase " + std::string(to_string(OriginPhase(p))));
    return v;
}

Verdict criterion_worked_example() {
    Verdict v;
    const Alphabet ab({"a", "b"});
    auto finite = [&](std::initializer_list<const char*> ts) {
        std::vector<Trace> traces;
        for (const char* t : ts) traces.push_back(parse_trace(t, ab));
        return from_traces(traces, ab);
    };
    const ModelChain chain(finite({"a", "a b", "b"}), finite({"a", "a b"}), finite({"a b"}));
    const auto r = extract_emergent(parse_log("a b\nb a\nb\na\n", ab), chain);
    const std::vector<Trace> expected{parse_trace("a", ab), parse_trace("b", ab), parse_trace("b a", ab)};
    v.require(r.emergent_traces == expected, "emergent set");
    v.require(r.guarantee_violated, "guarantee_violated");
    auto origin = [&](const char* t) { return r.per_trace.at(parse_trace(t, ab)).origin; };
    v.require(origin("b a") == OriginPhase::RequirementsGap, "origin of b a");
    v.require(origin("b") == OriginPhase::DesignGap, "origin of b");
    v.require(origin("a") == OriginPhase::ImplementationGap, "origin of a");
    v.require(origin("a b") == OriginPhase::NotEmergent, "a b is not emergent");
    return v;
}

bool run_binary(const std::string& args, std::string& out) {
    const std::string command = std::string(ARM_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return false;
    out.clear();
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    pclose(pipe);
    return true;
}

Verdict criterion_determinism(std::size_t& invocations) {
    Verdict v;
    const auto dir = std::filesystem::temp_directory_path() / "arm_acceptance_determinism";
    std::filesystem::remove_all(dir);
    const std::string bundle = (dir / "bundle").string();
    const std::vector<std::string> files{"rm.aut", "dm.aut", "im.aut", "log.txt", "truth.tsv", "meta.txt"};

    const std::string gen = "--format machine gen --seed 987654321 --alphabet-size 3 --states 6 "
                            "--extra-requirements 2 --extra-design 2 --extra-implementation 2 --out " + bundle;
    std::string first, second;
    std::map<std::string, std::string> bundle_first;
    v.require(run_binary(gen, first), "cannot start the arm binary");
    for (const auto& f : files) bundle_first[f] = slurp(dir / "bundle" / f);
    v.require(run_binary(gen, second), "cannot start the arm binary");
    v.require(!first.empty() && first == second, "gen machine output differs between runs");
    for (const auto& f : files) v.require(slurp(dir / "bundle" / f) == bundle_first[f], "bundle file " + f + " differs");
    invocations += 2;

    const std::string rm = bundle + "/rm.aut", dm = bundle + "/dm.aut", im = bundle + "/im.aut",
                      log = bundle + "/log.txt";
    for (const std::string& cmd : {"classify " + rm + " " + im, "check " + rm + " " + dm + " " + im,
                                   "analyze " + rm + " " + dm + " " + im + " " + log,
                                   "decompose " + rm + " " + dm + " " + im + " " + log,
                                   "enumerate " + dm + " --max-len 5", "canon " + rm}) {
        v.require(run_binary("--format machine " + cmd, first), "cannot start the arm binary");
        v.require(run_binary("--format machine " + cmd, second), "cannot start the arm binary");
        v.require(!first.empty() && first == second, "output of '" + cmd.substr(0, cmd.find(' ')) + "' differs");
        invocations += 2;
    }
    std::filesystem::remove_all(dir);
    return v;
}

}  // namespace

int main() {
    bool all = true;

    const auto population = random_population();
    double t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    const auto c1 = criterion_language_ops(population, t1);
    report(1, "language operations vs brute force", c1,
           std::to_string(population.size()) + " pairs, " + fixed(t1) + "s");
    all &= c1.ok;

    std::array<int, 5> classes{};
    const auto c2 = criterion_classification(population, t2, classes);
    report(2, "evolution flags vs brute force", c2,
           std::to_string(population.size()) + " pairs, classes E/R/A/T/S = " + std::to_string(classes[0]) + "/" +
               std::to_string(classes[1]) + "/" + std::to_string(classes[2]) + "/" + std::to_string(classes[3]) +
               "/" + std::to_string(classes[4]) + ", " + fixed(t2) + "s");
    all &= c2.ok;

    Verdict decomposition;
    std::size_t decomposed = 0, conforming = 0, injected = 0;
    const auto c3 = criterion_guarantee(t3, decomposition, conforming);
    report(3, "refining chain and conforming log give no emergence", c3,
           std::to_string(conforming) + " chains, " + fixed(t3) + "s");
    all &= c3.ok;

    std::array<std::size_t, 3> per_phase{};
    std::array<int, 5> labels{};
    const auto c4 = criterion_localization(t4, decomposition, injected, per_phase, labels);
    report(4, "origin localization and case evaluation", c4,
           std::to_string(injected) + " scenarios, injected R/D/I = " + std::to_string(per_phase[0]) + "/" +
               std::to_string(per_phase[1]) + "/" + std::to_string(per_phase[2]) + ", cases 1/2/3/none/unclassified = " +
               std::to_string(labels[0]) + "/" + std::to_string(labels[1]) + "/" + std::to_string(labels[2]) + "/" +
               std::to_string(labels[3]) + "/" + std::to_string(labels[4]) + ", " + fixed(t4) + "s");
    all &= c4.ok;

    decomposed = conforming + injected;
    decomposition.require(decomposed >= kConformingChains + kInjectedScenarios, "not every chain was decomposed");
    report(5, "decomposition soundness", decomposition, std::to_string(decomposed) + " chains");
    all &= decomposition.ok;

    const auto c6 = criterion_worked_example();
    report(6, "worked three-phase example", c6, "rm={a,ab,b} dm={a,ab} im={ab}, log {ab,ba,b,a}");
    all &= c6.ok;

    std::size_t invocations = 0;
    const auto c7 = criterion_determinism(invocations);
    report(7, "byte-identical machine output", c7, std::to_string(invocations) + " invocations of " ARM_BINARY);
    all &= c7.ok;

    std::cout << (all ? "acceptance: all criteria PASS" : "acceptance: FAILED") << std::endl;
    return all ? 0 : 1;
}
