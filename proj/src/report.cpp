#include "arm/report.hpp"

#include <sstream>

namespace arm::report {

namespace {

json optional_trace(const std::optional<Witness>& w, const Alphabet& alphabet) {
    return w ? trace_to_json(w->trace, alphabet) : json(nullptr);
}

std::optional<Witness> witness_from(const json& j, Witness::Kind kind, const Alphabet& alphabet) {
    if (j.is_null()) return std::nullopt;
    return Witness{trace_from_json(j, alphabet), kind};
}

json inclusion_to_json(const InclusionResult& r, const Alphabet& alphabet) {
    return {{"holds", r.holds()}, {"witness", optional_trace(r.counterexample, alphabet)}};
}

InclusionResult inclusion_from_json(const json& j, const Alphabet& alphabet) {
    return {witness_from(j.at("witness"), Witness::Kind::AcceptedByLeftNotRight, alphabet)};
}

json relation_to_json(const ModelVsEmergent& m) {
    return {{"meets", m.meets}, {"model_within_ebt", m.model_within_ebt}, {"ebt_within_model", m.ebt_within_model}};
}

ModelVsEmergent relation_from_json(const json& j) {
    return {j.at("meets").get<bool>(), j.at("model_within_ebt").get<bool>(), j.at("ebt_within_model").get<bool>()};
}

json part_to_json(const TraceAutomaton& aut, const Alphabet& alphabet) {
    const auto shortest = is_empty(aut);
    return {{"automaton", serialize(aut)},
            {"empty", shortest.empty()},
            {"shortest", shortest.empty() ? json(nullptr) : trace_to_json(shortest.witness->trace, alphabet)}};
}

std::string show(const Trace& t, const Alphabet& alphabet) { return t.empty() ? "ε" : to_string(t, alphabet); }

std::string show(const std::optional<Witness>& w, const Alphabet& alphabet) {
    return w ? show(w->trace, alphabet) : "none";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

json trace_to_json(const Trace& t, const Alphabet& alphabet) {
    json events = json::array();
    for (Symbol s : t.events()) events.push_back(alphabet.name(s));
    return events;
}

Trace trace_from_json(const json& j, const Alphabet& alphabet) {
    Trace t;
    for (const auto& e : j) t.push_back(alphabet.index(e.get<std::string>()));
    return t;
}

json to_json(const EvolutionReport& r, const Alphabet& alphabet) {
    return {
        {"abstraction", r.abstraction_holds},
        {"refinement", r.refinement_holds},
        {"total_change", r.total_change_holds},
        {"strict_evolution", r.strict_evolution_holds},
        {"canonical", std::string(to_string(r.canonical))},
        {"witnesses",
         {{"prev_only", optional_trace(r.prev_only, alphabet)},
          {"next_only", optional_trace(r.next_only, alphabet)},
          {"shared", optional_trace(r.shared, alphabet)}}},
    };
}

EvolutionReport evolution_from_json(const json& j, const Alphabet& alphabet) {
    EvolutionReport r;
    r.abstraction_holds = j.at("abstraction").get<bool>();
    r.refinement_holds = j.at("refinement").get<bool>();
    r.total_change_holds = j.at("total_change").get<bool>();
    r.strict_evolution_holds = j.at("strict_evolution").get<bool>();
    const auto canonical = evolution_class_from_string(j.at("canonical").get<std::string>());
    if (!canonical) throw InputError("unknown evolution class in report");
    r.canonical = *canonical;
    const auto& w = j.at("witnesses");
    r.prev_only = witness_from(w.at("prev_only"), Witness::Kind::AcceptedByLeftNotRight, alphabet);
    r.next_only = witness_from(w.at("next_only"), Witness::Kind::AcceptedByLeftNotRight, alphabet);
    r.shared = witness_from(w.at("shared"), Witness::Kind::AcceptedSample, alphabet);
    return r;
}

json to_json(const ChainReport& r, const Alphabet& alphabet) {
    return {{"dm_refines_rm", inclusion_to_json(r.dm_refines_rm, alphabet)},
            {"im_refines_dm", inclusion_to_json(r.im_refines_dm, alphabet)},
            {"chain_holds", r.chain_holds}};
}

ChainReport chain_from_json(const json& j, const Alphabet& alphabet) {
    return {inclusion_from_json(j.at("dm_refines_rm"), alphabet), inclusion_from_json(j.at("im_refines_dm"), alphabet),
            j.at("chain_holds").get<bool>()};
}

json to_json(const CaseClassification& c) {
    return {{"label", std::string(to_string(c.label))},
            {"rm", relation_to_json(c.rm)},
            {"dm", relation_to_json(c.dm)},
            {"im", relation_to_json(c.im)},
            {"case1", c.case1_holds()},
            {"case2", c.case2_holds()},
            {"case3", c.case3_holds()}};
}

CaseClassification case_from_json(const json& j) {
    CaseClassification c;
    const auto label = case_label_from_string(j.at("label").get<std::string>());
    if (!label) throw InputError("unknown case label in report");
    c.label = *label;
    c.rm = relation_from_json(j.at("rm"));
    c.dm = relation_from_json(j.at("dm"));
    c.im = relation_from_json(j.at("im"));
    return c;
}

json to_json(const EmergentReport& r, const Alphabet& alphabet) {
    json emergent = json::array();
    for (const auto& t : r.emergent_traces) emergent.push_back(trace_to_json(t, alphabet));
    json traces = json::array();
    for (const auto& [t, f] : r.per_trace)
        traces.push_back({{"trace", trace_to_json(t, alphabet)},
                          {"frequency", f.frequency},
                          {"in_rbt", f.membership.in_rbt},
                          {"in_dbt", f.membership.in_dbt},
                          {"in_ibt", f.membership.in_ibt},
                          {"origin", std::string(to_string(f.origin))}});
    json doc = {{"observed_count", r.observed_count},
                {"distinct_count", r.per_trace.size()},
                {"emergent_traces", std::move(emergent)},
                {"traces", std::move(traces)},
                {"case", to_json(r.case_result)},
                {"guarantee_violated", r.guarantee_violated},
                {"notes", json::array()}};
    if (r.case_result.label == CaseClassification::Label::Case3) doc["notes"].push_back(std::string(kCase3Note));
    return doc;
}

EmergentReport emergent_from_json(const json& j, const Alphabet& alphabet) {
    EmergentReport r;
    r.observed_count = j.at("observed_count").get<std::size_t>();
    for (const auto& t : j.at("emergent_traces")) r.emergent_traces.push_back(trace_from_json(t, alphabet));
    for (const auto& entry : j.at("traces")) {
        TraceFinding f;
        f.frequency = entry.at("frequency").get<std::size_t>();
        f.membership = {entry.at("in_rbt").get<bool>(), entry.at("in_dbt").get<bool>(), entry.at("in_ibt").get<bool>()};
        const auto origin = origin_phase_from_string(entry.at("origin").get<std::string>());
        if (!origin) throw InputError("unknown origin phase in report");
        f.origin = *origin;
        r.per_trace.emplace(trace_from_json(entry.at("trace"), alphabet), f);
    }
    r.case_result = case_from_json(j.at("case"));
    r.guarantee_violated = j.at("guarantee_violated").get<bool>();
    return r;
}

json to_json(const ExtendedDecomposition& d, const Alphabet& alphabet) {
    json uobt_r = json::array(), uobt_d = json::array();
    for (const auto& t : d.uobt_r_observed) uobt_r.push_back(trace_to_json(t, alphabet));
    for (const auto& t : d.uobt_d_observed) uobt_d.push_back(trace_to_json(t, alphabet));
    return {{"concrete_d", part_to_json(d.concrete_d, alphabet)},
            {"extra_d", part_to_json(d.extra_d, alphabet)},
            {"concrete_i", part_to_json(d.concrete_i, alphabet)},
            {"extra_i", part_to_json(d.extra_i, alphabet)},
            {"uobt_r_observed", std::move(uobt_r)},
            {"uobt_d_observed", std::move(uobt_d)}};
}

ExtendedDecomposition decomposition_from_json(const json& j, const Alphabet& alphabet) {
    auto part = [&](const char* key) {
        return reorder_alphabet(parse_automaton(j.at(key).at("automaton").get<std::string>()), alphabet);
    };
    ExtendedDecomposition d{part("concrete_d"), part("extra_d"), part("concrete_i"), part("extra_i"), {}, {}};
    for (const auto& t : j.at("uobt_r_observed")) d.uobt_r_observed.push_back(trace_from_json(t, alphabet));
    for (const auto& t : j.at("uobt_d_observed")) d.uobt_d_observed.push_back(trace_from_json(t, alphabet));
    return d;
}

json envelope(std::string_view command, const Alphabet& alphabet, json payload) {
    return {{"schema", std::string(kSchemaVersion)},
            {"command", std::string(command)},
            {"alphabet", alphabet.symbols()},
            {"report", std::move(payload)}};
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

// -------------------------------------------------------------------- text

std::string render_text(const EvolutionReport& r, const Alphabet& alphabet) {
    std::ostringstream out;
    out << "evolution: " << to_string(r.canonical) << '\n'
        << "  abstraction (prev within next):   " << yes_no(r.abstraction_holds) << '\n'
        << "  refinement (next within prev):    " << yes_no(r.refinement_holds) << '\n'
        << "  total change (nothing shared):    " << yes_no(r.total_change_holds) << '\n'
        << "  strict evolution:                 " << yes_no(r.strict_evolution_holds) << '\n'
        << "  only in prev: " << show(r.prev_only, alphabet) << '\n'
        << "  only in next: " << show(r.next_only, alphabet) << '\n'
        << "  in both:      " << show(r.shared, alphabet) << '\n';
    return out.str();
}

std::string render_text(const ChainReport& r, const Alphabet& alphabet) {
    std::ostringstream out;
    auto step = [&](const char* label, const InclusionResult& inc) {
        out << "  " << label << ": " << (inc.holds() ? "holds" : "FAILS");
        if (!inc.holds()) out << " (witness: " << show(inc.counterexample, alphabet) << ")";
        out << '\n';
    };
    out << "refinement chain: " << (r.chain_holds ? "holds" : "violated") << '\n';
    step("dm refines rm", r.dm_refines_rm);
    step("im refines dm", r.im_refines_dm);
    return out.str();
}

std::string render_text(const EmergentReport& r, const Alphabet& alphabet) {
    std::ostringstream out;
    out << "observed traces: " << r.observed_count << " (" << r.per_trace.size() << " distinct)\n"
        << "emergent traces: " << r.emergent_traces.size() << '\n';
    for (const auto& t : r.emergent_traces) {
        const auto& f = r.per_trace.at(t);
        out << "  " << show(t, alphabet) << "  origin=" << to_string(f.origin) << "  rm=" << yes_no(f.membership.in_rbt)
            << " dm=" << yes_no(f.membership.in_dbt) << " im=" << yes_no(f.membership.in_ibt);
        if (f.frequency > 1) out << "  x" << f.frequency;
        out << '\n';
    }
    out << "observed within implementation: " << (r.guarantee_violated ? "no, emergent behavior present" : "yes")
        << '\n';
    const auto& c = r.case_result;
    out << "case: " << to_string(c.label) << '\n';
    auto rel = [&](const char* name, const ModelVsEmergent& m) {
        out << "  " << name << ": meets=" << yes_no(m.meets) << " model_within_ebt=" << yes_no(m.model_within_ebt)
            << " ebt_within_model=" << yes_no(m.ebt_within_model) << '\n';
    };
    rel("rm", c.rm);
    rel("dm", c.dm);
    rel("im", c.im);
    if (c.label == CaseClassification::Label::Case3) out << "note: " << kCase3Note << '\n';
    return out.str();
}

std::string render_text(const ExtendedDecomposition& d, const Alphabet& alphabet) {
    std::ostringstream out;
    auto part = [&](const char* name, const TraceAutomaton& aut) {
        const auto e = is_empty(aut);
        out << "  " << name << ": " << (e.empty() ? "empty" : "shortest " + show(e.witness->trace, alphabet)) << '\n';
    };
    out << "design phase\n";
    part("concrete (dm and rm)", d.concrete_d);
    part("extra (dm not rm)", d.extra_d);
    out << "implementation phase\n";
    part("concrete (im and dm)", d.concrete_i);
    part("extra (im not dm)", d.extra_i);
    auto list = [&](const char* name, const std::vector<Trace>& ts) {
        out << name << ':';
        if (ts.empty()) out << " none";
        for (const auto& t : ts) out << "  " << show(t, alphabet);
        out << '\n';
    };
    list("unspecified observed at requirements level", d.uobt_r_observed);
    list("unspecified observed at design level", d.uobt_d_observed);
    return out.str();
}

}  // namespace arm::report
