#pragma once

// Synthetic model chains and observation logs with injected defects whose
// origin phase is known, used as ground truth for the emergence analysis.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "arm/arm_relations.hpp"
#include "arm/emergence.hpp"
#include "arm/rng.hpp"
#include "arm/trace_lang.hpp"

namespace arm {

struct ScenarioConfig {
    std::uint64_t seed = 0;
    std::size_t alphabet_size = 3;     // 2..5
    std::size_t states_per_model = 4;  // 2..8
    std::map<OriginPhase, std::size_t> extra_traces_per_phase;
    std::size_t log_size = 20;
    std::size_t max_len = 6;  // longest sampled trace

    /// Throws InputError when a field is out of range.
    void validate() const;
};

struct Scenario {
    ModelChain chain;
    std::map<Trace, OriginPhase> injected;
    TraceLog log;
    std::vector<std::string> warnings;
};

/// rm is random; dm is a random sub-automaton of rm and im one of dm, so
/// the chain refines by construction.
ModelChain gen_chain(const ScenarioConfig& cfg);
ModelChain gen_chain(const ScenarioConfig& cfg, Rng& rng);

/// Up to `n` distinct traces of length <= max_len, each drawn uniformly from
/// the accepted traces of `im`. Short supply is reported in `warnings`.
TraceLog sample_log(const TraceAutomaton& im, std::size_t n, std::size_t max_len, Rng& rng,
                    std::vector<std::string>& warnings);

/// Adds `count` new traces whose origin against the scenario's chain is
/// `phase`. Infeasible or short requests add what exists and warn.
Scenario inject(Scenario scenario, OriginPhase phase, std::size_t count, std::size_t max_len, Rng& rng);

/// gen_chain, then sample_log from im, then inject per configured phase, on one stream.
Scenario generate_scenario(const ScenarioConfig& cfg);

/// Writes rm.aut, dm.aut, im.aut, log.txt, truth.tsv and meta.txt into `dir`.
void write_bundle(const Scenario& scenario, const ScenarioConfig& cfg, const std::filesystem::path& dir);

/// Parses truth.tsv content (trace TAB origin per line).
std::map<Trace, OriginPhase> parse_truth(std::string_view text, const Alphabet& alphabet);

}  // namespace arm
