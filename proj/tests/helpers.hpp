#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "arm/trace_lang.hpp"

namespace testing {

inline arm::Alphabet alphabet(std::initializer_list<const char*> symbols) {
    return arm::Alphabet(std::vector<std::string>(symbols.begin(), symbols.end()));
}

inline arm::Trace tr(const arm::Alphabet& a, const std::string& text) { return arm::parse_trace(text, a); }

/// Finite language from space-separated traces; "-" is the empty trace.
inline arm::TraceAutomaton lang(const arm::Alphabet& a, std::initializer_list<const char*> traces) {
    std::vector<arm::Trace> ts;
    for (const char* t : traces) ts.push_back(tr(a, t));
    return arm::from_traces(ts, a);
}

inline std::vector<std::string> show(const std::vector<arm::Trace>& ts, const arm::Alphabet& a) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(arm::to_string(t, a));
    return out;
}

}  // namespace testing
