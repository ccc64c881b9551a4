#include "arm/scenario_gen.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace arm {

namespace {

constexpr double kEdgeProbability = 0.55;
constexpr double kExtraEdgeProbability = 0.15;
constexpr double kAcceptProbability = 0.4;
constexpr double kDeleteProbability = 0.25;

Alphabet scenario_alphabet(std::size_t size) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < size; ++i) symbols.emplace_back(1, static_cast<char>('a' + i));
    return Alphabet(std::move(symbols));
}

TraceAutomaton random_automaton(const Alphabet& alphabet, std::size_t states, Rng& rng) {
    std::vector<TraceAutomaton::Transition> edges;
    for (StateId q = 0; q < states; ++q)
        for (Symbol a = 0; a < alphabet.size(); ++a) {
            if (rng.chance(kEdgeProbability)) edges.push_back({q, a, static_cast<StateId>(rng.below(states))});
            if (rng.chance(kExtraEdgeProbability)) edges.push_back({q, a, static_cast<StateId>(rng.below(states))});
        }
    std::vector<StateId> accepting;
    for (StateId q = 0; q < states; ++q)
        if (rng.chance(kAcceptProbability)) accepting.push_back(q);
    if (accepting.empty()) accepting.push_back(static_cast<StateId>(rng.below(states)));
    return trim(TraceAutomaton(alphabet, states, 0, std::move(accepting), std::move(edges)));
}

/// Deletes a random non-empty subset of transitions and accepting marks,
/// then prunes. Every run of the result is a run of `src`.
TraceAutomaton random_sub_automaton(const TraceAutomaton& src, Rng& rng) {
    auto edges = src.transitions();
    std::vector<StateId> accepting;
    for (StateId q = 0; q < src.state_count(); ++q)
        if (src.is_accepting(q)) accepting.push_back(q);
    const std::size_t items = edges.size() + accepting.size();
    if (items == 0) return src;

    std::vector<char> drop(items, 0);
    bool any = false;
    for (auto& d : drop) any |= (d = rng.chance(kDeleteProbability));
    if (!any) drop[rng.below(items)] = 1;

    std::vector<TraceAutomaton::Transition> kept_edges;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!drop[i]) kept_edges.push_back(edges[i]);
    std::vector<StateId> kept_accepting;
    for (std::size_t i = 0; i < accepting.size(); ++i)
        if (!drop[edges.size() + i]) kept_accepting.push_back(accepting[i]);

    std::vector<std::string> names;
    for (StateId q = 0; q < src.state_count(); ++q) names.push_back(src.state_name(q));
    return trim(TraceAutomaton(src.alphabet(), std::move(names), src.initial(), std::move(kept_accepting),
                               std::move(kept_edges)));
}

/// Uniform sampling over the accepted traces of length <= max_len, by a
/// weighted walk on the trimmed minimal DFA. Weight of (state, remaining
/// length r) = number of accepted words of length exactly r from that state.
class TraceSampler {
public:
    TraceSampler(const TraceAutomaton& aut, std::size_t max_len) : dfa_(trim(minimize(aut))), max_len_(max_len) {
        const auto n = dfa_.state_count();
        const auto k = dfa_.alphabet().size();
        words_.assign(max_len + 1, std::vector<double>(n, 0.0));
        for (StateId q = 0; q < n; ++q) words_[0][q] = dfa_.is_accepting(q) ? 1.0 : 0.0;
        for (std::size_t r = 1; r <= max_len; ++r)
            for (StateId q = 0; q < n; ++q)
                for (Symbol a = 0; a < k; ++a)
                    for (StateId t : dfa_.successors(q, a)) words_[r][q] += words_[r - 1][t];
        for (std::size_t r = 0; r <= max_len; ++r) total_ += words_[r][dfa_.initial()];
    }

    double total() const { return total_; }

    Trace draw(Rng& rng) const {
        std::size_t len = 0;
        {
            double u = rng.unit() * total_;
            for (len = 0; len < max_len_; ++len) {
                const double w = words_[len][dfa_.initial()];
                if (u < w) break;
                u -= w;
            }
            while (words_[len][dfa_.initial()] == 0.0) --len;  // guards rounding at the tail
        }
        Trace trace;
        StateId q = dfa_.initial();
        for (std::size_t r = len; r > 0; --r) {
            double u = rng.unit() * words_[r][q];
            Symbol chosen = 0;
            StateId next = q;
            bool picked = false;
            for (Symbol a = 0; a < dfa_.alphabet().size() && !picked; ++a)
                for (StateId t : dfa_.successors(q, a)) {
                    const double w = words_[r - 1][t];
                    if (w == 0.0) continue;
                    chosen = a;
                    next = t;
                    if (u < w) {
                        picked = true;
                        break;
                    }
                    u -= w;
                }
            trace.push_back(chosen);
            q = next;
        }
        return trace;
    }

    /// Up to `n` distinct draws not in `exclude`, in draw order.
    std::vector<Trace> draw_distinct(std::size_t n, Rng& rng, const std::set<Trace>& exclude) const {
        std::vector<Trace> out;
        if (n == 0 || total_ == 0.0) return out;
        if (total_ <= 4.0 * static_cast<double>(n + exclude.size())) {
            std::vector<Trace> pool;
            for (auto& t : enumerate(dfa_, max_len_))
                if (!exclude.contains(t)) pool.push_back(std::move(t));
            // Partial Fisher-Yates.
            const std::size_t take = std::min(n, pool.size());
            for (std::size_t i = 0; i < take; ++i) {
                std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
                out.push_back(pool[i]);
            }
            return out;
        }
        std::set<Trace> seen = exclude;
        while (out.size() < n) {
            Trace t = draw(rng);
            if (seen.insert(t).second) out.push_back(std::move(t));
        }
        return out;
    }

private:
    TraceAutomaton dfa_;
    std::size_t max_len_;
    std::vector<std::vector<double>> words_;
    double total_ = 0.0;
};

TraceAutomaton injection_target(const ModelChain& chain, OriginPhase phase) {
    switch (phase) {
        case OriginPhase::RequirementsGap:
            return complement(chain.rm());
        case OriginPhase::DesignGap:
            return combine(SetOp::Difference, chain.rm(), chain.dm());
        case OriginPhase::ImplementationGap:
            return combine(SetOp::Difference, combine(SetOp::Intersection, chain.rm(), chain.dm()), chain.im());
        case OriginPhase::NotEmergent:
            break;
    }
    throw InputError("cannot inject traces with origin NotEmergent");
}

}  // namespace

void ScenarioConfig::validate() const {
    if (alphabet_size < 2 || alphabet_size > 5)
        throw InputError("alphabet_size must be in 2..5, got " + std::to_string(alphabet_size));
    if (states_per_model < 2 || states_per_model > 8)
        throw InputError("states_per_model must be in 2..8, got " + std::to_string(states_per_model));
    if (extra_traces_per_phase.contains(OriginPhase::NotEmergent))
        throw InputError("extra traces cannot target NotEmergent");
}

ModelChain gen_chain(const ScenarioConfig& cfg) {
    Rng rng(cfg.seed);
    return gen_chain(cfg, rng);
}

ModelChain gen_chain(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    const Alphabet alphabet = scenario_alphabet(cfg.alphabet_size);
    TraceAutomaton rm = random_automaton(alphabet, cfg.states_per_model, rng);
    TraceAutomaton dm = random_sub_automaton(rm, rng);
    TraceAutomaton im = random_sub_automaton(dm, rng);
    return ModelChain(std::move(rm), std::move(dm), std::move(im));
}

TraceLog sample_log(const TraceAutomaton& im, std::size_t n, std::size_t max_len, Rng& rng,
                    std::vector<std::string>& warnings) {
    TraceLog log;
    log.source = "sampled from implementation model";
    if (n == 0) return log;
    const TraceSampler sampler(im, max_len);
    if (sampler.total() == 0.0) {
        warnings.push_back("implementation model accepts no trace of length <= " + std::to_string(max_len));
        return log;
    }
    log.traces = sampler.draw_distinct(n, rng, {});
    if (log.traces.size() < n)
        warnings.push_back("implementation model accepts only " + std::to_string(log.traces.size()) +
                           " traces of length <= " + std::to_string(max_len) + "; requested " + std::to_string(n));
    return log;
}

Scenario inject(Scenario scenario, OriginPhase phase, std::size_t count, std::size_t max_len, Rng& rng) {
    if (count == 0) return scenario;
    const TraceAutomaton target = injection_target(scenario.chain, phase);
    const auto shortest = is_empty(target);
    const std::string name(to_string(phase));
    if (shortest.empty()) {
        scenario.warnings.push_back("infeasible injection: no trace can have origin " + name);
        return scenario;
    }
    const std::size_t len = std::max(max_len, shortest.witness->trace.size());
    std::set<Trace> exclude;
    for (const auto& [t, _] : scenario.injected) exclude.insert(t);
    for (const auto& t : scenario.log.traces) exclude.insert(t);

    const auto drawn = TraceSampler(target, len).draw_distinct(count, rng, exclude);
    if (drawn.size() < count)
        scenario.warnings.push_back("short injection: " + std::to_string(drawn.size()) + " of " +
                                    std::to_string(count) + " traces with origin " + name);
    for (const auto& t : drawn) {
        scenario.injected.emplace(t, phase);
        scenario.log.traces.push_back(t);
    }
    return scenario;
}

Scenario generate_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<std::string> warnings;
    ModelChain chain = gen_chain(cfg, rng);
    TraceLog log = sample_log(chain.im(), cfg.log_size, cfg.max_len, rng, warnings);
    Scenario scenario{std::move(chain), {}, std::move(log), std::move(warnings)};
    for (OriginPhase phase : {OriginPhase::RequirementsGap, OriginPhase::DesignGap, OriginPhase::ImplementationGap}) {
        auto it = cfg.extra_traces_per_phase.find(phase);
        if (it != cfg.extra_traces_per_phase.end())
            scenario = inject(std::move(scenario), phase, it->second, cfg.max_len, rng);
    }
    scenario.log.source = "scenario seed " + std::to_string(cfg.seed);
    return scenario;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("failed writing " + path.string());
}

std::size_t extra_for(const ScenarioConfig& cfg, OriginPhase p) {
    auto it = cfg.extra_traces_per_phase.find(p);
    return it == cfg.extra_traces_per_phase.end() ? 0 : it->second;
}

}  // namespace

void write_bundle(const Scenario& scenario, const ScenarioConfig& cfg, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());

    const auto& alphabet = scenario.chain.alphabet();
    write_file(dir / "rm.aut", serialize(scenario.chain.rm()));
    write_file(dir / "dm.aut", serialize(scenario.chain.dm()));
    write_file(dir / "im.aut", serialize(scenario.chain.im()));
    write_file(dir / "log.txt", "# generated scenario, rng " + std::string(Rng::kName) + ", seed " +
                                    std::to_string(cfg.seed) + "\n" + serialize_log(scenario.log, alphabet));

    std::ostringstream truth;
    for (const auto& [t, phase] : scenario.injected) truth << to_string(t, alphabet) << '\t' << to_string(phase) << '\n';
    write_file(dir / "truth.tsv", truth.str());

    std::ostringstream meta;
    meta << "rng: " << Rng::kName << '\n'
         << "seed: " << cfg.seed << '\n'
         << "alphabet_size: " << cfg.alphabet_size << '\n'
         << "states_per_model: " << cfg.states_per_model << '\n'
         << "extra_requirements_gap: " << extra_for(cfg, OriginPhase::RequirementsGap) << '\n'
         << "extra_design_gap: " << extra_for(cfg, OriginPhase::DesignGap) << '\n'
         << "extra_implementation_gap: " << extra_for(cfg, OriginPhase::ImplementationGap) << '\n'
         << "log_size: " << cfg.log_size << '\n'
         << "max_len: " << cfg.max_len << '\n';
    for (const auto& w : scenario.warnings) meta << "warning: " << w << '\n';
    write_file(dir / "meta.txt", meta.str());
}

std::map<Trace, OriginPhase> parse_truth(std::string_view text, const Alphabet& alphabet) {
    std::map<Trace, OriginPhase> truth;
    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++number;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw SyntaxError(number, 1, "expected 'trace<TAB>origin'");
        const auto origin = origin_phase_from_string(line.substr(tab + 1));
        if (!origin) throw SyntaxError(number, tab + 2, "unknown origin phase");
        truth.emplace(parse_trace(line.substr(0, tab), alphabet), *origin);
    }
    return truth;
}

}  // namespace arm
