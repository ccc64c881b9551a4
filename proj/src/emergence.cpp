#include "arm/emergence.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <utility>

namespace arm {

namespace {

constexpr std::array<std::pair<OriginPhase, std::string_view>, 4> kOriginNames{{
    {OriginPhase::RequirementsGap, "RequirementsGap"},
    {OriginPhase::DesignGap, "DesignGap"},
    {OriginPhase::ImplementationGap, "ImplementationGap"},
    {OriginPhase::NotEmergent, "NotEmergent"},
}};

constexpr std::array<std::pair<CaseClassification::Label, std::string_view>, 5> kCaseNames{{
    {CaseClassification::Label::Case1, "Case1"},
    {CaseClassification::Label::Case2, "Case2"},
    {CaseClassification::Label::Case3, "Case3"},
    {CaseClassification::Label::NoEmergence, "NoEmergence"},
    {CaseClassification::Label::Unclassified, "Unclassified"},
}};

template <typename Table, typename Value>
std::string_view name_of(const Table& table, Value v) {
    for (const auto& [value, name] : table)
        if (value == v) return name;
    return "?";
}

template <typename Table>
auto value_of(const Table& table, std::string_view s) -> std::optional<typename Table::value_type::first_type> {
    for (const auto& [value, name] : table)
        if (name == s) return value;
    return std::nullopt;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

ModelVsEmergent compare(const TraceAutomaton& model, const TraceAutomaton& ebt, const Limits& limits) {
    ModelVsEmergent r;
    r.meets = !is_empty(combine(SetOp::Intersection, model, ebt, limits)).empty();
    r.model_within_ebt = includes(ebt, model, limits).holds();
    r.ebt_within_model = includes(model, ebt, limits).holds();
    return r;
}

}  // namespace

std::string_view to_string(OriginPhase p) { return name_of(kOriginNames, p); }
std::optional<OriginPhase> origin_phase_from_string(std::string_view s) { return value_of(kOriginNames, s); }
std::string_view to_string(CaseClassification::Label l) { return name_of(kCaseNames, l); }
std::optional<CaseClassification::Label> case_label_from_string(std::string_view s) {
    return value_of(kCaseNames, s);
}

// --------------------------------------------------------------------- logs

std::vector<Trace> TraceLog::distinct() const {
    std::vector<Trace> out = traces;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<Trace, std::size_t> TraceLog::frequencies() const {
    std::map<Trace, std::size_t> counts;
    for (const auto& t : traces) ++counts[t];
    return counts;
}

TraceLog parse_log(std::string_view text, const Alphabet& alphabet, std::string source) {
    TraceLog log;
    log.source = std::move(source);
    bool first = true;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim_view(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string where = "line " + std::to_string(number);
        if (first && line.starts_with("alphabet:")) {
            std::string_view rest = line.substr(9);
            while (!rest.empty()) {
                auto comma = rest.find(',');
                auto item = trim_view(rest.substr(0, comma));
                if (item.empty()) throw SyntaxError(number, 1, "empty item in alphabet header");
                if (!alphabet.find(item)) throw ForeignSymbolError(std::string(item), where);
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
            first = false;
            continue;
        }
        first = false;

        Trace trace;
        std::size_t i = 0;
        std::vector<std::pair<std::string_view, std::size_t>> tokens;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) ++i;
            std::size_t j = i;
            while (j < line.size() && !is_space(line[j])) ++j;
            if (j > i) tokens.emplace_back(line.substr(i, j - i), i);
            i = j;
        }
        if (tokens.size() == 1 && tokens[0].first == "-") {
            log.traces.push_back(std::move(trace));
        } else {
            for (const auto& [tok, col] : tokens) {
                if (tok == "-") throw SyntaxError(number, col + 1, "'-' must stand alone to denote the empty trace");
                auto s = alphabet.find(tok);
                if (!s) throw ForeignSymbolError(std::string(tok), where);
                trace.push_back(*s);
            }
            log.traces.push_back(std::move(trace));
        }
        if (end == text.size()) break;
    }
    return log;
}

std::string serialize_log(const TraceLog& log, const Alphabet& alphabet) {
    std::ostringstream out;
    out << "alphabet: ";
    for (std::size_t i = 0; i < alphabet.size(); ++i) out << (i ? ", " : "") << alphabet.name(static_cast<Symbol>(i));
    out << '\n';
    for (const auto& t : log.traces) out << to_string(t, alphabet) << '\n';
    return out.str();
}

// --------------------------------------------------------------- membership

MembershipVector membership_vector(const Trace& trace, const ModelChain& chain) {
    return {accepts(chain.rm(), trace), accepts(chain.dm(), trace), accepts(chain.im(), trace)};
}

OriginPhase origin_of(const MembershipVector& m) {
    if (m.in_ibt) return OriginPhase::NotEmergent;
    if (!m.in_rbt) return OriginPhase::RequirementsGap;
    if (!m.in_dbt) return OriginPhase::DesignGap;
    return OriginPhase::ImplementationGap;
}

OriginPhase per_trace_origin(const Trace& trace, const ModelChain& chain) {
    return origin_of(membership_vector(trace, chain));
}

// ------------------------------------------------------------------- cases

CaseClassification localize_case(const TraceAutomaton& ebt, const ModelChain& chain, const Limits& limits) {
    if (!ebt.alphabet().same_symbols(chain.alphabet()))
        throw AlphabetMismatchError("emergent language and model chain use different alphabets");
    CaseClassification result;
    result.rm = compare(chain.rm(), ebt, limits);
    result.dm = compare(chain.dm(), ebt, limits);
    result.im = compare(chain.im(), ebt, limits);

    if (is_empty(ebt).empty())
        result.label = CaseClassification::Label::NoEmergence;
    else if (result.case1_holds())
        result.label = CaseClassification::Label::Case1;
    else if (result.case2_holds())
        result.label = CaseClassification::Label::Case2;
    else if (result.case3_holds())
        result.label = CaseClassification::Label::Case3;
    else
        result.label = CaseClassification::Label::Unclassified;
    return result;
}

// ----------------------------------------------------------------- reports

EmergentReport extract_emergent(const TraceLog& log, const ModelChain& chain, const Limits& limits) {
    EmergentReport report;
    report.observed_count = log.traces.size();

    const auto freq = log.frequencies();
    std::vector<Trace> distinct;
    distinct.reserve(freq.size());
    for (const auto& [t, _] : freq) distinct.push_back(t);

    const auto memberships = membership_vectors_parallel(distinct, chain);
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        TraceFinding finding{memberships[i], origin_of(memberships[i]), freq.at(distinct[i])};
        if (finding.origin != OriginPhase::NotEmergent) report.emergent_traces.push_back(distinct[i]);
        report.per_trace.emplace(distinct[i], finding);
    }
    report.guarantee_violated = !report.emergent_traces.empty();
    report.case_result = localize_case(from_traces(report.emergent_traces, chain.alphabet()), chain, limits);
    return report;
}

ExtendedDecomposition decompose_extended(const ModelChain& chain, const EmergentReport& report,
                                         const Limits& limits) {
    ExtendedDecomposition d{
        combine(SetOp::Intersection, chain.dm(), chain.rm(), limits),
        combine(SetOp::Difference, chain.dm(), chain.rm(), limits),
        combine(SetOp::Intersection, chain.im(), chain.dm(), limits),
        combine(SetOp::Difference, chain.im(), chain.dm(), limits),
        {},
        {},
    };
    for (const auto& t : report.emergent_traces) {
        const auto it = report.per_trace.find(t);
        const OriginPhase origin = it != report.per_trace.end() ? it->second.origin : per_trace_origin(t, chain);
        if (origin == OriginPhase::RequirementsGap) d.uobt_r_observed.push_back(t);
        if (origin == OriginPhase::DesignGap) d.uobt_d_observed.push_back(t);
    }
    return d;
}

}  // namespace arm
