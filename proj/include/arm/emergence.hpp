#pragma once

// Emergent-behavior analysis: which observed traces fall outside the
// implementation model, which phase each one escaped from, how the emergent
// set relates to each phase model, and the concrete/extra split per phase.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arm/arm_relations.hpp"
#include "arm/trace_lang.hpp"

namespace arm {

/// Observed runs in file order. Duplicates are kept; set semantics go through distinct().
struct TraceLog {
    std::vector<Trace> traces;
    std::string source;

    /// Deduplicated, shortlex order.
    std::vector<Trace> distinct() const;
    std::map<Trace, std::size_t> frequencies() const;
};

TraceLog parse_log(std::string_view text, const Alphabet& alphabet, std::string source = {});
/// Writes the log format with an `alphabet:` header.
std::string serialize_log(const TraceLog& log, const Alphabet& alphabet);

struct MembershipVector {
    bool in_rbt = false;
    bool in_dbt = false;
    bool in_ibt = false;
    friend bool operator==(const MembershipVector&, const MembershipVector&) = default;
};

enum class OriginPhase { RequirementsGap, DesignGap, ImplementationGap, NotEmergent };

std::string_view to_string(OriginPhase p);
std::optional<OriginPhase> origin_phase_from_string(std::string_view s);

MembershipVector membership_vector(const Trace& trace, const ModelChain& chain);
/// First phase whose model rejects the trace, scanning rm, dm, im.
OriginPhase origin_of(const MembershipVector& m);
OriginPhase per_trace_origin(const Trace& trace, const ModelChain& chain);

/// Serial reference kernel: one membership vector per input trace.
std::vector<MembershipVector> membership_vectors_serial(std::span<const Trace> traces, const ModelChain& chain);
/// OpenMP kernel; output is identical to the serial one, element for element.
std::vector<MembershipVector> membership_vectors_parallel(std::span<const Trace> traces, const ModelChain& chain);

/// How one phase model's language relates to the emergent language E.
struct ModelVsEmergent {
    bool meets = false;             // sem(model) ∩ E ≠ ∅
    bool model_within_ebt = false;  // sem(model) ⊆ E
    bool ebt_within_model = false;  // E ⊆ sem(model)
    friend bool operator==(const ModelVsEmergent&, const ModelVsEmergent&) = default;
};

struct CaseClassification {
    enum class Label { Case1, Case2, Case3, NoEmergence, Unclassified };
    Label label = Label::NoEmergence;
    ModelVsEmergent rm, dm, im;

    /// Emergent set strictly overlaps the requirements.
    bool case1_holds() const { return rm.meets && !rm.model_within_ebt && !rm.ebt_within_model; }
    /// Within the requirements, strictly overlaps the design.
    bool case2_holds() const {
        return rm.ebt_within_model && dm.meets && !dm.model_within_ebt && !dm.ebt_within_model;
    }
    /// Within the design, strictly overlaps the implementation.
    bool case3_holds() const {
        return dm.ebt_within_model && im.meets && !im.model_within_ebt && !im.ebt_within_model;
    }
    friend bool operator==(const CaseClassification&, const CaseClassification&) = default;
};

std::string_view to_string(CaseClassification::Label l);
std::optional<CaseClassification::Label> case_label_from_string(std::string_view s);

/// Evaluates the three case formulas on the language of `ebt`; the first
/// satisfied one in order 1, 2, 3 wins.
CaseClassification localize_case(const TraceAutomaton& ebt, const ModelChain& chain, const Limits& limits = {});

struct TraceFinding {
    MembershipVector membership;
    OriginPhase origin = OriginPhase::NotEmergent;
    std::size_t frequency = 0;
    friend bool operator==(const TraceFinding&, const TraceFinding&) = default;
};

struct EmergentReport {
    std::size_t observed_count = 0;  // log lines, duplicates included
    std::vector<Trace> emergent_traces;
    std::map<Trace, TraceFinding> per_trace;
    CaseClassification case_result;
    bool guarantee_violated = false;
};

EmergentReport extract_emergent(const TraceLog& log, const ModelChain& chain, const Limits& limits = {});

struct ExtendedDecomposition {
    TraceAutomaton concrete_d;  // dm ∩ rm
    TraceAutomaton extra_d;     // dm \ rm
    TraceAutomaton concrete_i;  // im ∩ dm
    TraceAutomaton extra_i;     // im \ dm
    std::vector<Trace> uobt_r_observed;
    std::vector<Trace> uobt_d_observed;
};

/// The implementation is taken to be pure code, so no observed trace is
/// attributed to an implementation-level unspecified part.
ExtendedDecomposition decompose_extended(const ModelChain& chain, const EmergentReport& report,
                                         const Limits& limits = {});

}  // namespace arm
