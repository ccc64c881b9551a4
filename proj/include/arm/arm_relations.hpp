#pragma once

// Evolution-step classification between two phase models and refinement
// checking along the requirements -> design -> implementation chain.

#include <optional>
#include <string_view>

#include "arm/trace_lang.hpp"

namespace arm {

enum class EvolutionClass { Equivalent, Refinement, Abstraction, TotalChange, StrictEvolution };

std::string_view to_string(EvolutionClass c);
std::optional<EvolutionClass> evolution_class_from_string(std::string_view s);

/// Every relation flag is computed from its own set condition, so several
/// may hold at once (identical languages, or an empty language).
struct EvolutionReport {
    bool abstraction_holds = false;       // sem(prev) ⊆ sem(next)
    bool refinement_holds = false;        // sem(next) ⊆ sem(prev)
    bool total_change_holds = false;      // sem(prev) ∩ sem(next) = ∅
    bool strict_evolution_holds = false;  // overlap, neither side included
    EvolutionClass canonical = EvolutionClass::StrictEvolution;
    std::optional<Witness> prev_only;
    std::optional<Witness> next_only;
    std::optional<Witness> shared;
};

/// The three phase models. All share one alphabet; dm and im are reordered
/// to rm's symbol order on construction.
class ModelChain {
public:
    ModelChain(TraceAutomaton rm, TraceAutomaton dm, TraceAutomaton im);

    const TraceAutomaton& rm() const noexcept { return rm_; }
    const TraceAutomaton& dm() const noexcept { return dm_; }
    const TraceAutomaton& im() const noexcept { return im_; }
    const Alphabet& alphabet() const noexcept { return rm_.alphabet(); }

private:
    TraceAutomaton rm_, dm_, im_;
};

struct ChainReport {
    InclusionResult dm_refines_rm;
    InclusionResult im_refines_dm;
    bool chain_holds = false;
};

EvolutionReport classify_evolution(const TraceAutomaton& prev, const TraceAutomaton& next,
                                   const Limits& limits = {});
ChainReport check_chain(const ModelChain& chain, const Limits& limits = {});

}  // namespace arm
