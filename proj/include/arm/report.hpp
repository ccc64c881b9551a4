#pragma once

// Machine-readable (JSON) and human-readable renderings of every analysis
// result. The JSON form is the integration surface: keys are stable within a
// schema version and each document parses back into the value it came from.

#include "json.hpp"
#include <string>
#include <string_view>

#include "arm/arm_relations.hpp"
#include "arm/emergence.hpp"
#include "arm/trace_lang.hpp"

namespace arm::report {

using nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "arm-report/1";

json trace_to_json(const Trace& t, const Alphabet& alphabet);
Trace trace_from_json(const json& j, const Alphabet& alphabet);

json to_json(const EvolutionReport& r, const Alphabet& alphabet);
EvolutionReport evolution_from_json(const json& j, const Alphabet& alphabet);

json to_json(const ChainReport& r, const Alphabet& alphabet);
ChainReport chain_from_json(const json& j, const Alphabet& alphabet);

json to_json(const CaseClassification& c);
CaseClassification case_from_json(const json& j);

json to_json(const EmergentReport& r, const Alphabet& alphabet);
EmergentReport emergent_from_json(const json& j, const Alphabet& alphabet);

json to_json(const ExtendedDecomposition& d, const Alphabet& alphabet);
ExtendedDecomposition decomposition_from_json(const json& j, const Alphabet& alphabet);

/// Wraps a payload with the schema version, command name and alphabet.
json envelope(std::string_view command, const Alphabet& alphabet, json payload);
/// Pretty-printed, sorted keys, trailing newline.
std::string dump(const json& document);

std::string render_text(const EvolutionReport& r, const Alphabet& alphabet);
std::string render_text(const ChainReport& r, const Alphabet& alphabet);
std::string render_text(const EmergentReport& r, const Alphabet& alphabet);
std::string render_text(const ExtendedDecomposition& d, const Alphabet& alphabet);

/// Caveat attached to Case3 findings: the implementation model is analyzed
/// as a plain automaton even if the deployed system is more than the code.
inline constexpr std::string_view kCase3Note =
    "Case3 requires an implementation model that covers more than the code (hardware, environment setup); "
    "im is analyzed as an ordinary automaton.";

}  // namespace arm::report
