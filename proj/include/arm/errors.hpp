#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arm {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that could not be read at all: bad syntax, bad format, bad config.
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed text. Carries the 1-based line and column of the offending token.
class SyntaxError : public InputError {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed but inconsistent input (undeclared state, missing initial state, ...).
class SemanticError : public InputError {
public:
    using InputError::InputError;
};

/// A trace or header used an event that is not part of the alphabet in scope.
class ForeignSymbolError : public InputError {
public:
    explicit ForeignSymbolError(const std::string& symbol, const std::string& context = {})
        : InputError("symbol '" + symbol + "' is not in the alphabet" + (context.empty() ? "" : " (" + context + ")")),
          symbol_(symbol) {}

    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

class AlphabetMismatchError : public InputError {
public:
    using InputError::InputError;
};

/// Subset or product construction exceeded the configured state budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace arm
