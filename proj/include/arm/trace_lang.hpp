#pragma once

// Finite automata over event alphabets. The accepted language of an
// automaton is the set of behavior traces a phase model denotes; every
// relation the rest of the library decides reduces to the operations here.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arm/errors.hpp"

namespace arm {

/// Index of an event in its alphabet's declaration order.
using Symbol = std::uint32_t;
using StateId = std::uint32_t;

/// Non-empty, duplicate-free, ordered set of event names. The declaration
/// order drives every tie-break (witness choice, enumeration order).
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& name(Symbol s) const { return symbols_.at(s); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }

    std::optional<Symbol> find(std::string_view name) const;
    /// Like find() but throws ForeignSymbolError.
    Symbol index(std::string_view name) const;

    /// Same symbols, possibly in a different order.
    bool same_symbols(const Alphabet& other) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

    static bool valid_token(std::string_view token);

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Symbol> index_;
};

/// One finite run, as symbol indices into some alphabet. Ordered shortlex:
/// shorter first, then lexicographically by symbol index.
class Trace {
public:
    Trace() = default;
    Trace(std::initializer_list<Symbol> events) : events_(events) {}
    explicit Trace(std::vector<Symbol> events) : events_(std::move(events)) {}

    const std::vector<Symbol>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }
    Symbol operator[](std::size_t i) const { return events_[i]; }
    void push_back(Symbol s) { events_.push_back(s); }

    friend bool operator==(const Trace&, const Trace&) = default;
    friend std::strong_ordering operator<=>(const Trace& a, const Trace& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.events_ <=> b.events_;
    }

private:
    std::vector<Symbol> events_;
};

/// Events separated by single spaces; the empty trace prints as "-".
std::string to_string(const Trace& trace, const Alphabet& alphabet);
/// Inverse of to_string. Whitespace-separated events, "-" alone is the empty trace.
Trace parse_trace(std::string_view text, const Alphabet& alphabet);

struct Witness {
    enum class Kind { AcceptedByLeftNotRight, AcceptedSample };
    Trace trace;
    Kind kind = Kind::AcceptedSample;
};

struct Limits {
    /// Upper bound on states built by one subset or product construction.
    std::size_t state_budget = 1'000'000;
};

/// Nondeterministic finite automaton. Unreachable states are allowed.
/// Immutable after construction; the constructor enforces all invariants.
class TraceAutomaton {
public:
    struct Transition {
        StateId from;
        Symbol symbol;
        StateId to;
        friend auto operator<=>(const Transition&, const Transition&) = default;
    };

    TraceAutomaton() = default;
    TraceAutomaton(Alphabet alphabet, std::vector<std::string> state_names, StateId initial,
                   std::vector<StateId> accepting, std::vector<Transition> transitions);
    /// States named q0..q{n-1}.
    TraceAutomaton(Alphabet alphabet, std::size_t state_count, StateId initial, std::vector<StateId> accepting,
                   std::vector<Transition> transitions);

    static TraceAutomaton empty_language(const Alphabet& alphabet);
    static TraceAutomaton universal(const Alphabet& alphabet);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t state_count() const noexcept { return names_.size(); }
    StateId initial() const noexcept { return initial_; }
    bool is_accepting(StateId q) const { return accepting_.at(q) != 0; }
    const std::string& state_name(StateId q) const { return names_.at(q); }
    std::span<const StateId> successors(StateId q, Symbol a) const {
        return delta_[static_cast<std::size_t>(q) * alphabet_.size() + a];
    }
    /// Sorted by (from, symbol, to), duplicates removed.
    std::vector<Transition> transitions() const;
    std::size_t transition_count() const;

    /// At most one successor per (state, symbol).
    bool is_deterministic() const;
    /// Deterministic with exactly one successor per (state, symbol).
    bool is_complete_dfa() const;

private:
    void validate_and_index(const std::vector<StateId>& accepting, const std::vector<Transition>& transitions);

    Alphabet alphabet_;
    std::vector<std::string> names_;
    StateId initial_ = 0;
    std::vector<char> accepting_;
    std::vector<std::vector<StateId>> delta_;
};

TraceAutomaton parse_automaton(std::string_view text);
/// Writes the automaton file format, preserving state names and order.
std::string serialize(const TraceAutomaton& aut);
/// Minimal trimmed DFA, states renamed q0..qn in breadth-first discovery
/// order. Language-equivalent inputs give byte-identical output.
std::string canonical_form(const TraceAutomaton& aut, const Limits& limits = {});

/// Throws ForeignSymbolError if the trace indexes past the alphabet.
bool accepts(const TraceAutomaton& aut, const Trace& trace);

/// Complete DFA built by subset construction over reachable subsets.
TraceAutomaton determinize(const TraceAutomaton& aut, const Limits& limits = {});
/// Minimal complete DFA.
TraceAutomaton minimize(const TraceAutomaton& aut, const Limits& limits = {});
/// Drops states that are unreachable or cannot reach acceptance. The initial state is kept.
TraceAutomaton trim(const TraceAutomaton& aut);
/// Same language over `target`, which must hold the same symbols in any order.
TraceAutomaton reorder_alphabet(const TraceAutomaton& aut, const Alphabet& target);

enum class SetOp { Union, Intersection, Difference };

/// Result alphabet is `a`'s. Throws AlphabetMismatchError if the symbol sets differ.
TraceAutomaton combine(SetOp op, const TraceAutomaton& a, const TraceAutomaton& b, const Limits& limits = {});
TraceAutomaton complement(const TraceAutomaton& aut, const Limits& limits = {});

struct EmptinessResult {
    std::optional<Witness> witness;
    bool empty() const noexcept { return !witness.has_value(); }
};

/// Breadth-first search in alphabet order: the witness, if any, is the
/// shortest accepted trace and the lexicographically least among those.
EmptinessResult is_empty(const TraceAutomaton& aut);

struct InclusionResult {
    std::optional<Witness> counterexample;
    bool holds() const noexcept { return !counterexample.has_value(); }
};

/// Decides L(sub) ⊆ L(super). On failure the counterexample is the
/// shortlex-least trace of L(sub) \ L(super).
InclusionResult includes(const TraceAutomaton& super, const TraceAutomaton& sub, const Limits& limits = {});
bool equivalent(const TraceAutomaton& a, const TraceAutomaton& b, const Limits& limits = {});

/// All accepted traces of length <= max_len, in shortlex order.
std::vector<Trace> enumerate(const TraceAutomaton& aut, std::size_t max_len);

/// Deterministic prefix-tree acceptor for exactly `traces`.
TraceAutomaton from_traces(std::span<const Trace> traces, const Alphabet& alphabet);

}  // namespace arm
