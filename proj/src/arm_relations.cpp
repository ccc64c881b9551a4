#include "arm/arm_relations.hpp"

#include <array>
#include <utility>

namespace arm {

namespace {

constexpr std::array<std::pair<EvolutionClass, std::string_view>, 5> kClassNames{{
    {EvolutionClass::Equivalent, "Equivalent"},
    {EvolutionClass::Refinement, "Refinement"},
    {EvolutionClass::Abstraction, "Abstraction"},
    {EvolutionClass::TotalChange, "TotalChange"},
    {EvolutionClass::StrictEvolution, "StrictEvolution"},
}};

std::optional<Witness> witness_of(const TraceAutomaton& aut, Witness::Kind kind) {
    auto result = is_empty(aut);
    if (result.empty()) return std::nullopt;
    result.witness->kind = kind;
    return result.witness;
}

}  // namespace

std::string_view to_string(EvolutionClass c) {
    for (const auto& [value, name] : kClassNames)
        if (value == c) return name;
    return "?";
}

std::optional<EvolutionClass> evolution_class_from_string(std::string_view s) {
    for (const auto& [value, name] : kClassNames)
        if (name == s) return value;
    return std::nullopt;
}

ModelChain::ModelChain(TraceAutomaton rm, TraceAutomaton dm, TraceAutomaton im)
    : rm_(std::move(rm)),
      dm_(reorder_alphabet(dm, rm_.alphabet())),
      im_(reorder_alphabet(im, rm_.alphabet())) {}

EvolutionReport classify_evolution(const TraceAutomaton& prev, const TraceAutomaton& next, const Limits& limits) {
    if (!prev.alphabet().same_symbols(next.alphabet()))
        throw AlphabetMismatchError("prev and next models are over different alphabets");

    // Determinize once; the three products below reuse both DFAs.
    const TraceAutomaton p = determinize(prev, limits);
    const TraceAutomaton n = determinize(reorder_alphabet(next, prev.alphabet()), limits);

    EvolutionReport report;
    report.prev_only = witness_of(combine(SetOp::Difference, p, n, limits), Witness::Kind::AcceptedByLeftNotRight);
    report.next_only = witness_of(combine(SetOp::Difference, n, p, limits), Witness::Kind::AcceptedByLeftNotRight);
    report.shared = witness_of(combine(SetOp::Intersection, p, n, limits), Witness::Kind::AcceptedSample);

    report.abstraction_holds = !report.prev_only;
    report.refinement_holds = !report.next_only;
    report.total_change_holds = !report.shared;
    report.strict_evolution_holds = report.shared && report.prev_only && report.next_only;

    if (report.abstraction_holds && report.refinement_holds)
        report.canonical = EvolutionClass::Equivalent;
    else if (report.refinement_holds)
        report.canonical = EvolutionClass::Refinement;
    else if (report.abstraction_holds)
        report.canonical = EvolutionClass::Abstraction;
    else if (report.total_change_holds)
        report.canonical = EvolutionClass::TotalChange;
    else
        report.canonical = EvolutionClass::StrictEvolution;
    return report;
}

ChainReport check_chain(const ModelChain& chain, const Limits& limits) {
    ChainReport report;
    report.dm_refines_rm = includes(chain.rm(), chain.dm(), limits);
    report.im_refines_dm = includes(chain.dm(), chain.im(), limits);
    report.chain_holds = report.dm_refines_rm.holds() && report.im_refines_dm.holds();
    return report;
}

}  // namespace arm
