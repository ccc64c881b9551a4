#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "arm/trace_lang.hpp"

namespace arm {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::string_view text;  // comment stripped
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> split_whitespace(std::string_view text, std::size_t base_column = 1) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) ++end;
        if (end > i) tokens.push_back({text.substr(i, end - i), base_column + i});
        i = end;
    }
    return tokens;
}

std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (std::any_of(raw.begin(), raw.end(), [](char c) { return !is_space(c); })) lines.push_back({number, raw});
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

/// Parses `key: item, item, ...`. Items are trimmed; an empty list is allowed.
std::vector<Token> parse_header(const Line& line, std::string_view key) {
    std::size_t i = 0;
    while (i < line.text.size() && is_space(line.text[i])) ++i;
    const std::string_view rest = line.text.substr(i);
    if (rest.substr(0, key.size()) != key || rest.size() == key.size() || rest[key.size()] != ':')
        throw SyntaxError(line.number, i + 1, "expected '" + std::string(key) + ":'");

    std::vector<Token> items;
    std::size_t pos = i + key.size() + 1;
    const std::string_view body = line.text.substr(pos);
    if (std::all_of(body.begin(), body.end(), is_space)) return items;
    std::size_t item_start = pos;
    for (std::size_t j = pos; j <= line.text.size(); ++j) {
        if (j < line.text.size() && line.text[j] != ',') continue;
        auto tokens = split_whitespace(line.text.substr(item_start, j - item_start), item_start + 1);
        if (tokens.empty()) throw SyntaxError(line.number, j + 1, "empty item in '" + std::string(key) + "' list");
        if (tokens.size() > 1) throw SyntaxError(line.number, tokens[1].column, "expected ',' between items");
        if (!Alphabet::valid_token(tokens[0].text))
            throw SyntaxError(line.number, tokens[0].column, "invalid name '" + std::string(tokens[0].text) + "'");
        items.push_back(tokens[0]);
        item_start = j + 1;
    }
    return items;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

TraceAutomaton parse_automaton(std::string_view text) {
    const auto lines = significant_lines(text);
    static constexpr std::string_view keys[] = {"alphabet", "states", "initial", "accepting"};
    for (std::size_t h = lines.size(); h < 4; ++h)
        throw SemanticError("missing '" + std::string(keys[h]) + ":' declaration");

    std::vector<std::vector<Token>> headers;
    for (std::size_t h = 0; h < 4; ++h) headers.push_back(parse_header(lines[h], keys[h]));

    std::vector<std::string> symbols;
    for (const auto& t : headers[0]) {
        if (std::find(symbols.begin(), symbols.end(), t.text) != symbols.end())
            throw SemanticError(at_line(lines[0].number) + "duplicate symbol '" + std::string(t.text) + "'");
        symbols.emplace_back(t.text);
    }
    if (symbols.empty()) throw SemanticError(at_line(lines[0].number) + "alphabet must declare at least one symbol");
    Alphabet alphabet(std::move(symbols));

    std::vector<std::string> names;
    std::unordered_map<std::string, StateId> state_index;
    for (const auto& t : headers[1]) {
        if (!state_index.emplace(std::string(t.text), static_cast<StateId>(names.size())).second)
            throw SemanticError(at_line(lines[1].number) + "duplicate state '" + std::string(t.text) + "'");
        names.emplace_back(t.text);
    }
    if (names.empty()) throw SemanticError(at_line(lines[1].number) + "at least one state must be declared");

    auto lookup = [&](std::string_view name, std::size_t line, std::string_view role) {
        auto it = state_index.find(std::string(name));
        if (it == state_index.end())
            throw SemanticError(at_line(line) + std::string(role) + " references undeclared state '" +
                                std::string(name) + "'");
        return it->second;
    };

    if (headers[2].empty()) throw SemanticError(at_line(lines[2].number) + "missing initial state");
    if (headers[2].size() > 1)
        throw SyntaxError(lines[2].number, headers[2][1].column, "exactly one initial state is allowed");
    const StateId initial = lookup(headers[2][0].text, lines[2].number, "initial");

    std::vector<StateId> accepting;
    for (const auto& t : headers[3]) accepting.push_back(lookup(t.text, lines[3].number, "accepting"));

    std::vector<TraceAutomaton::Transition> transitions;
    for (std::size_t i = 4; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto tokens = split_whitespace(line.text);
        if (tokens.size() != 3) {
            const std::size_t col = tokens.size() > 3 ? tokens[3].column : tokens.back().column;
            throw SyntaxError(line.number, col, "expected a transition of the form 'src -event-> dst'");
        }
        const auto arrow = tokens[1].text;
        if (arrow.size() < 4 || arrow.front() != '-' || arrow.substr(arrow.size() - 2) != "->")
            throw SyntaxError(line.number, tokens[1].column, "expected '-event->' arrow");
        const auto symbol_name = arrow.substr(1, arrow.size() - 3);
        const auto symbol = alphabet.find(symbol_name);
        if (!symbol)
            throw SemanticError(at_line(line.number) + "transition uses symbol '" + std::string(symbol_name) +
                                "' which is not in the alphabet");
        transitions.push_back({lookup(tokens[0].text, line.number, "transition"), *symbol,
                               lookup(tokens[2].text, line.number, "transition")});
    }
    return TraceAutomaton(std::move(alphabet), std::move(names), initial, std::move(accepting),
                          std::move(transitions));
}

std::string serialize(const TraceAutomaton& aut) {
    std::ostringstream out;
    const auto& alpha = aut.alphabet();
    auto join = [&](auto&& items) {
        std::string s;
        for (const auto& item : items) {
            if (!s.empty()) s += ", ";
            s += item;
        }
        return s;
    };
    std::vector<std::string> names, accepting;
    for (StateId q = 0; q < aut.state_count(); ++q) {
        names.push_back(aut.state_name(q));
        if (aut.is_accepting(q)) accepting.push_back(aut.state_name(q));
    }
    out << "alphabet: " << join(alpha.symbols()) << '\n';
    out << "states: " << join(names) << '\n';
    out << "initial: " << aut.state_name(aut.initial()) << '\n';
    out << "accepting:" << (accepting.empty() ? "" : " ") << join(accepting) << '\n';
    for (const auto& t : aut.transitions())
        out << aut.state_name(t.from) << " -" << alpha.name(t.symbol) << "-> " << aut.state_name(t.to) << '\n';
    return out.str();
}

std::string canonical_form(const TraceAutomaton& aut, const Limits& limits) {
    const TraceAutomaton reduced = trim(minimize(aut, limits));
    const auto k = reduced.alphabet().size();

    constexpr StateId unseen = ~StateId{0};
    std::vector<StateId> order(reduced.state_count(), unseen);
    std::deque<StateId> queue{reduced.initial()};
    order[reduced.initial()] = 0;
    StateId next_id = 1;
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < k; ++a)
            for (StateId t : reduced.successors(q, a))
                if (order[t] == unseen) {
                    order[t] = next_id++;
                    queue.push_back(t);
                }
    }

    std::vector<StateId> accepting;
    std::vector<TraceAutomaton::Transition> edges;
    for (StateId q = 0; q < reduced.state_count(); ++q) {
        if (reduced.is_accepting(q)) accepting.push_back(order[q]);
        for (Symbol a = 0; a < k; ++a)
            for (StateId t : reduced.successors(q, a)) edges.push_back({order[q], a, order[t]});
    }
    std::sort(accepting.begin(), accepting.end());
    std::sort(edges.begin(), edges.end());
    return serialize(TraceAutomaton(reduced.alphabet(), next_id, 0, std::move(accepting), std::move(edges)));
}

}  // namespace arm
