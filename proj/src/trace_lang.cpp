#include "arm/trace_lang.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace arm {

// ---------------------------------------------------------------- Alphabet

bool Alphabet::valid_token(std::string_view token) {
    if (token.empty() || token == "-") return false;
    return std::none_of(token.begin(), token.end(), [](char c) {
        return c == ',' || c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    });
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw SemanticError("alphabet must declare at least one symbol");
    for (Symbol i = 0; i < symbols_.size(); ++i) {
        if (!valid_token(symbols_[i])) throw SemanticError("invalid symbol name '" + symbols_[i] + "'");
        if (!index_.emplace(symbols_[i], i).second)
            throw SemanticError("duplicate symbol '" + symbols_[i] + "' in alphabet");
    }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Symbol Alphabet::index(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw ForeignSymbolError(std::string(name));
}

bool Alphabet::same_symbols(const Alphabet& other) const {
    if (size() != other.size()) return false;
    return std::all_of(symbols_.begin(), symbols_.end(), [&](const std::string& s) { return other.find(s).has_value(); });
}

// ------------------------------------------------------------------- Trace

std::string to_string(const Trace& trace, const Alphabet& alphabet) {
    if (trace.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) out += ' ';
        if (trace[i] >= alphabet.size()) throw ForeignSymbolError("#" + std::to_string(trace[i]));
        out += alphabet.name(trace[i]);
    }
    return out;
}

Trace parse_trace(std::string_view text, const Alphabet& alphabet) {
    Trace trace;
    std::size_t pos = 0;
    std::vector<std::string_view> tokens;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        if (end > pos) tokens.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    if (tokens.size() == 1 && tokens.front() == "-") return trace;
    for (auto tok : tokens) trace.push_back(alphabet.index(tok));
    return trace;
}

// ---------------------------------------------------------- TraceAutomaton

namespace {

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    return names;
}

void check_trace(const TraceAutomaton& aut, const Trace& trace) {
    for (Symbol s : trace.events())
        if (s >= aut.alphabet().size()) throw ForeignSymbolError("#" + std::to_string(s), "trace symbol index out of range");
}

}  // namespace

TraceAutomaton::TraceAutomaton(Alphabet alphabet, std::vector<std::string> state_names, StateId initial,
                               std::vector<StateId> accepting, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)), names_(std::move(state_names)), initial_(initial) {
    validate_and_index(accepting, transitions);
}

TraceAutomaton::TraceAutomaton(Alphabet alphabet, std::size_t state_count, StateId initial,
                               std::vector<StateId> accepting, std::vector<Transition> transitions)
    : TraceAutomaton(std::move(alphabet), default_names(state_count), initial, std::move(accepting),
                     std::move(transitions)) {}

void TraceAutomaton::validate_and_index(const std::vector<StateId>& accepting,
                                        const std::vector<Transition>& transitions) {
    if (alphabet_.size() == 0) throw SemanticError("automaton has an empty alphabet");
    if (names_.empty()) throw SemanticError("automaton must have at least one state");
    {
        std::unordered_set<std::string> seen;
        for (const auto& n : names_) {
            if (!Alphabet::valid_token(n)) throw SemanticError("invalid state name '" + n + "'");
            if (!seen.insert(n).second) throw SemanticError("duplicate state '" + n + "'");
        }
    }
    const auto n = names_.size();
    const auto k = alphabet_.size();
    if (initial_ >= n) throw SemanticError("initial state is not a declared state");
    accepting_.assign(n, 0);
    for (StateId q : accepting) {
        if (q >= n) throw SemanticError("accepting state is not a declared state");
        accepting_[q] = 1;
    }
    delta_.assign(n * k, {});
    for (const auto& t : transitions) {
        if (t.from >= n || t.to >= n) throw SemanticError("transition endpoint is not a declared state");
        if (t.symbol >= k) throw SemanticError("transition symbol is not in the alphabet");
        delta_[static_cast<std::size_t>(t.from) * k + t.symbol].push_back(t.to);
    }
    for (auto& succ : delta_) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
}

TraceAutomaton TraceAutomaton::empty_language(const Alphabet& alphabet) {
    return TraceAutomaton(alphabet, 1, 0, {}, {});
}

TraceAutomaton TraceAutomaton::universal(const Alphabet& alphabet) {
    std::vector<Transition> loops;
    for (Symbol a = 0; a < alphabet.size(); ++a) loops.push_back({0, a, 0});
    return TraceAutomaton(alphabet, 1, 0, {0}, std::move(loops));
}

std::vector<TraceAutomaton::Transition> TraceAutomaton::transitions() const {
    std::vector<Transition> out;
    const auto k = alphabet_.size();
    for (StateId q = 0; q < state_count(); ++q)
        for (Symbol a = 0; a < k; ++a)
            for (StateId t : successors(q, a)) out.push_back({q, a, t});
    return out;
}

std::size_t TraceAutomaton::transition_count() const {
    std::size_t count = 0;
    for (const auto& succ : delta_) count += succ.size();
    return count;
}

bool TraceAutomaton::is_deterministic() const {
    return std::all_of(delta_.begin(), delta_.end(), [](const auto& s) { return s.size() <= 1; });
}

bool TraceAutomaton::is_complete_dfa() const {
    return std::all_of(delta_.begin(), delta_.end(), [](const auto& s) { return s.size() == 1; });
}

// -------------------------------------------------------------- membership

bool accepts(const TraceAutomaton& aut, const Trace& trace) {
    check_trace(aut, trace);
    const auto n = aut.state_count();
    std::vector<char> current(n, 0), next(n, 0);
    current[aut.initial()] = 1;
    for (Symbol a : trace.events()) {
        std::fill(next.begin(), next.end(), 0);
        bool any = false;
        for (StateId q = 0; q < n; ++q) {
            if (!current[q]) continue;
            for (StateId t : aut.successors(q, a)) next[t] = any = true;
        }
        if (!any) return false;
        current.swap(next);
    }
    for (StateId q = 0; q < n; ++q)
        if (current[q] && aut.is_accepting(q)) return true;
    return false;
}

// ------------------------------------------------------------ constructions

TraceAutomaton determinize(const TraceAutomaton& aut, const Limits& limits) {
    using Subset = std::vector<StateId>;
    const auto k = aut.alphabet().size();
    std::map<Subset, StateId> ids;
    std::vector<Subset> subsets;
    auto intern = [&](Subset s) -> StateId {
        auto [it, inserted] = ids.try_emplace(s, static_cast<StateId>(subsets.size()));
        if (inserted) {
            if (subsets.size() >= limits.state_budget)
                throw ResourceError("subset construction exceeded the state budget of " +
                                    std::to_string(limits.state_budget));
            subsets.push_back(std::move(s));
        }
        return it->second;
    };

    intern({aut.initial()});
    std::vector<TraceAutomaton::Transition> edges;
    std::vector<char> mark(aut.state_count(), 0);
    for (StateId i = 0; i < subsets.size(); ++i) {
        const Subset current = subsets[i];
        for (Symbol a = 0; a < k; ++a) {
            Subset next;
            for (StateId q : current)
                for (StateId t : aut.successors(q, a))
                    if (!mark[t]) {
                        mark[t] = 1;
                        next.push_back(t);
                    }
            for (StateId t : next) mark[t] = 0;
            std::sort(next.begin(), next.end());
            edges.push_back({i, a, intern(std::move(next))});
        }
    }
    std::vector<StateId> accepting;
    for (StateId i = 0; i < subsets.size(); ++i)
        if (std::any_of(subsets[i].begin(), subsets[i].end(), [&](StateId q) { return aut.is_accepting(q); }))
            accepting.push_back(i);
    return TraceAutomaton(aut.alphabet(), subsets.size(), 0, std::move(accepting), std::move(edges));
}

TraceAutomaton minimize(const TraceAutomaton& aut, const Limits& limits) {
    const TraceAutomaton dfa = determinize(aut, limits);
    const auto n = dfa.state_count();
    const auto k = dfa.alphabet().size();

    // Moore partition refinement: split classes by (own class, successor classes).
    std::vector<StateId> cls(n);
    for (StateId q = 0; q < n; ++q) cls[q] = dfa.is_accepting(q) ? 1 : 0;
    std::size_t class_count = 0;
    for (;;) {
        std::map<std::vector<StateId>, StateId> signatures;
        std::vector<StateId> next(n);
        for (StateId q = 0; q < n; ++q) {
            std::vector<StateId> sig{cls[q]};
            for (Symbol a = 0; a < k; ++a) sig.push_back(cls[dfa.successors(q, a).front()]);
            next[q] = signatures.try_emplace(std::move(sig), static_cast<StateId>(signatures.size())).first->second;
        }
        cls.swap(next);
        if (signatures.size() == class_count) break;
        class_count = signatures.size();
    }

    std::vector<TraceAutomaton::Transition> edges;
    std::vector<StateId> accepting;
    std::vector<char> done(class_count, 0);
    for (StateId q = 0; q < n; ++q) {
        if (done[cls[q]]) continue;
        done[cls[q]] = 1;
        if (dfa.is_accepting(q)) accepting.push_back(cls[q]);
        for (Symbol a = 0; a < k; ++a) edges.push_back({cls[q], a, cls[dfa.successors(q, a).front()]});
    }
    return TraceAutomaton(dfa.alphabet(), class_count, cls[dfa.initial()], std::move(accepting), std::move(edges));
}

TraceAutomaton trim(const TraceAutomaton& aut) {
    const auto n = aut.state_count();
    const auto k = aut.alphabet().size();
    const auto edges = aut.transitions();

    std::vector<char> reach(n, 0);
    std::vector<StateId> stack{aut.initial()};
    reach[aut.initial()] = 1;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (Symbol a = 0; a < k; ++a)
            for (StateId t : aut.successors(q, a))
                if (!reach[t]) {
                    reach[t] = 1;
                    stack.push_back(t);
                }
    }

    std::vector<std::vector<StateId>> reverse(n);
    for (const auto& e : edges) reverse[e.to].push_back(e.from);
    std::vector<char> coreach(n, 0);
    for (StateId q = 0; q < n; ++q)
        if (aut.is_accepting(q)) {
            coreach[q] = 1;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : reverse[q])
            if (!coreach[p]) {
                coreach[p] = 1;
                stack.push_back(p);
            }
    }

    std::vector<StateId> renum(n, 0);
    std::vector<std::string> names;
    std::vector<char> useful(n, 0), keep(n, 0);
    for (StateId q = 0; q < n; ++q) {
        useful[q] = reach[q] && coreach[q];
        // The initial state survives even when useless, as the sole state of an empty language.
        keep[q] = useful[q] || q == aut.initial();
        if (keep[q]) {
            renum[q] = static_cast<StateId>(names.size());
            names.push_back(aut.state_name(q));
        }
    }
    std::vector<TraceAutomaton::Transition> kept;
    for (const auto& e : edges)
        if (useful[e.from] && useful[e.to]) kept.push_back({renum[e.from], e.symbol, renum[e.to]});
    std::vector<StateId> accepting;
    for (StateId q = 0; q < n; ++q)
        if (keep[q] && aut.is_accepting(q)) accepting.push_back(renum[q]);
    return TraceAutomaton(aut.alphabet(), std::move(names), renum[aut.initial()], std::move(accepting),
                          std::move(kept));
}

TraceAutomaton reorder_alphabet(const TraceAutomaton& aut, const Alphabet& target) {
    if (!aut.alphabet().same_symbols(target))
        throw AlphabetMismatchError("alphabets declare different symbol sets");
    if (aut.alphabet() == target) return aut;
    std::vector<Symbol> remap(aut.alphabet().size());
    for (Symbol a = 0; a < remap.size(); ++a) remap[a] = target.index(aut.alphabet().name(a));
    auto edges = aut.transitions();
    for (auto& e : edges) e.symbol = remap[e.symbol];
    std::vector<std::string> names;
    std::vector<StateId> accepting;
    for (StateId q = 0; q < aut.state_count(); ++q) {
        names.push_back(aut.state_name(q));
        if (aut.is_accepting(q)) accepting.push_back(q);
    }
    return TraceAutomaton(target, std::move(names), aut.initial(), std::move(accepting), std::move(edges));
}

namespace {

TraceAutomaton product(const TraceAutomaton& a, const TraceAutomaton& b, SetOp op, const Limits& limits) {
    const auto k = a.alphabet().size();
    std::unordered_map<std::uint64_t, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto intern = [&](StateId p, StateId q) -> StateId {
        const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
        auto [it, inserted] = ids.try_emplace(key, static_cast<StateId>(pairs.size()));
        if (inserted) {
            if (pairs.size() >= limits.state_budget)
                throw ResourceError("product construction exceeded the state budget of " +
                                    std::to_string(limits.state_budget));
            pairs.emplace_back(p, q);
        }
        return it->second;
    };
    intern(a.initial(), b.initial());
    std::vector<TraceAutomaton::Transition> edges;
    for (StateId i = 0; i < pairs.size(); ++i) {
        const auto [p, q] = pairs[i];
        for (Symbol s = 0; s < k; ++s) edges.push_back({i, s, intern(a.successors(p, s).front(), b.successors(q, s).front())});
    }
    std::vector<StateId> accepting;
    for (StateId i = 0; i < pairs.size(); ++i) {
        const bool in_a = a.is_accepting(pairs[i].first);
        const bool in_b = b.is_accepting(pairs[i].second);
        const bool keep = op == SetOp::Union ? (in_a || in_b) : op == SetOp::Intersection ? (in_a && in_b) : (in_a && !in_b);
        if (keep) accepting.push_back(i);
    }
    return TraceAutomaton(a.alphabet(), pairs.size(), 0, std::move(accepting), std::move(edges));
}

}  // namespace

TraceAutomaton combine(SetOp op, const TraceAutomaton& a, const TraceAutomaton& b, const Limits& limits) {
    if (!a.alphabet().same_symbols(b.alphabet()))
        throw AlphabetMismatchError("cannot combine automata over different alphabets");
    const TraceAutomaton left = determinize(a, limits);
    const TraceAutomaton right = determinize(reorder_alphabet(b, a.alphabet()), limits);
    return product(left, right, op, limits);
}

TraceAutomaton complement(const TraceAutomaton& aut, const Limits& limits) {
    const TraceAutomaton dfa = determinize(aut, limits);
    std::vector<StateId> accepting;
    for (StateId q = 0; q < dfa.state_count(); ++q)
        if (!dfa.is_accepting(q)) accepting.push_back(q);
    return TraceAutomaton(dfa.alphabet(), dfa.state_count(), dfa.initial(), std::move(accepting), dfa.transitions());
}

// --------------------------------------------------------------- decisions

EmptinessResult is_empty(const TraceAutomaton& aut) {
    const auto n = aut.state_count();
    const auto k = aut.alphabet().size();
    struct Parent {
        StateId state;
        Symbol symbol;
    };
    std::vector<char> seen(n, 0);
    std::vector<Parent> parent(n);

    auto witness_to = [&](StateId q) {
        std::vector<Symbol> events;
        while (q != aut.initial()) {
            events.push_back(parent[q].symbol);
            q = parent[q].state;
        }
        std::reverse(events.begin(), events.end());
        return EmptinessResult{Witness{Trace(std::move(events)), Witness::Kind::AcceptedSample}};
    };

    seen[aut.initial()] = 1;
    if (aut.is_accepting(aut.initial())) return witness_to(aut.initial());
    std::deque<StateId> queue{aut.initial()};
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < k; ++a)
            for (StateId t : aut.successors(q, a)) {
                if (seen[t]) continue;
                seen[t] = 1;
                parent[t] = {q, a};
                if (aut.is_accepting(t)) return witness_to(t);
                queue.push_back(t);
            }
    }
    return {};
}

InclusionResult includes(const TraceAutomaton& super, const TraceAutomaton& sub, const Limits& limits) {
    auto result = is_empty(combine(SetOp::Difference, sub, super, limits));
    if (result.empty()) return {};
    result.witness->kind = Witness::Kind::AcceptedByLeftNotRight;
    return InclusionResult{std::move(result.witness)};
}

bool equivalent(const TraceAutomaton& a, const TraceAutomaton& b, const Limits& limits) {
    return includes(a, b, limits).holds() && includes(b, a, limits).holds();
}

std::vector<Trace> enumerate(const TraceAutomaton& aut, std::size_t max_len) {
    const auto k = aut.alphabet().size();

    // Only states that can still reach acceptance are tracked; a prefix with
    // none of them left has no accepted extension.
    const TraceAutomaton useful = trim(aut);

    struct Node {
        Trace trace;
        std::vector<StateId> states;
    };
    std::vector<Node> frontier{{Trace{}, {useful.initial()}}};
    std::vector<Trace> out;
    std::vector<char> mark(useful.state_count(), 0);
    for (std::size_t len = 0;; ++len) {
        for (const auto& node : frontier)
            if (std::any_of(node.states.begin(), node.states.end(), [&](StateId q) { return useful.is_accepting(q); }))
                out.push_back(node.trace);
        if (len == max_len) break;
        std::vector<Node> next;
        for (const auto& node : frontier)
            for (Symbol a = 0; a < k; ++a) {
                std::vector<StateId> states;
                for (StateId q : node.states)
                    for (StateId t : useful.successors(q, a))
                        if (!mark[t]) {
                            mark[t] = 1;
                            states.push_back(t);
                        }
                if (states.empty()) continue;
                for (StateId t : states) mark[t] = 0;
                std::sort(states.begin(), states.end());
                Trace extended = node.trace;
                extended.push_back(a);
                next.push_back({std::move(extended), std::move(states)});
            }
        if (next.empty()) break;
        frontier.swap(next);
    }
    return out;
}

TraceAutomaton from_traces(std::span<const Trace> traces, const Alphabet& alphabet) {
    const auto k = alphabet.size();
    std::vector<Trace> sorted(traces.begin(), traces.end());
    for (const auto& t : sorted)
        for (Symbol s : t.events())
            if (s >= k) throw ForeignSymbolError("#" + std::to_string(s), "trace symbol index out of range");
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::vector<StateId>> child{std::vector<StateId>(k, 0)};  // 0 = no child (root is never a child)
    std::vector<char> accepting_flag{0};
    for (const auto& t : sorted) {
        StateId node = 0;
        for (Symbol s : t.events()) {
            if (child[node][s] == 0) {
                child[node][s] = static_cast<StateId>(child.size());
                child.emplace_back(k, 0);
                accepting_flag.push_back(0);
            }
            node = child[node][s];
        }
        accepting_flag[node] = 1;
    }
    std::vector<TraceAutomaton::Transition> edges;
    std::vector<StateId> accepting;
    for (StateId q = 0; q < child.size(); ++q) {
        if (accepting_flag[q]) accepting.push_back(q);
        for (Symbol s = 0; s < k; ++s)
            if (child[q][s] != 0) edges.push_back({q, s, child[q][s]});
    }
    return TraceAutomaton(alphabet, child.size(), 0, std::move(accepting), std::move(edges));
}

}  // namespace arm
