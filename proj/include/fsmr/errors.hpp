#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsmr {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Definition documents

/// Malformed `.fsm` (or style) document. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// A field or DFA transition declared twice.
class DuplicateField : public ParseError {
public:
    using ParseError::ParseError;
};

/// `kind:` other than `dfa` or `nfa`.
class UnknownKind : public ParseError {
public:
    using ParseError::ParseError;
};

// ---------------------------------------------------------------------------
// Machine validation

class ValidationError : public Error {
public:
    using Error::Error;
};

class MissingTransition : public ValidationError {
public:
    MissingTransition(std::string state, std::string symbol);
    const std::string& state() const noexcept { return state_; }
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string state_;
    std::string symbol_;
};

class UnknownState : public ValidationError {
public:
    explicit UnknownState(std::string name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class UnknownSymbol : public ValidationError {
public:
    explicit UnknownSymbol(std::string symbol);
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

class StartNotInStates : public ValidationError {
public:
    explicit StartNotInStates(std::string start);
    const std::string& start() const noexcept { return start_; }

private:
    std::string start_;
};

class DuplicateName : public ValidationError {
public:
    explicit DuplicateName(std::string name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Empty name, surrounding whitespace, or a symbol that is not exactly one scalar value.
class InvalidName : public ValidationError {
public:
    InvalidName(std::string name, std::string reason);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A DFA declares two targets for the same (state, symbol) pair.
class AmbiguousTransition : public ValidationError {
public:
    AmbiguousTransition(std::string state, std::string symbol);
};

/// validate_dfa on an nfa document or the other way round.
class KindMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TrapNameCollision : public ValidationError {
public:
    explicit TrapNameCollision(std::string name);
};

// ---------------------------------------------------------------------------
// Runtime

class InvalidInputSymbol : public Error {
public:
    InvalidInputSymbol(std::size_t position, std::string symbol);
    std::size_t position() const noexcept { return position_; }
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::size_t position_;
    std::string symbol_;
};

/// Regex syntax error; position is a 0-based scalar-value offset.
class RegexSyntaxError : public Error {
public:
    RegexSyntaxError(std::size_t position, std::string expected);
    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

class TraceMismatch : public Error {
public:
    using Error::Error;
};

class InvalidStyle : public Error {
public:
    using Error::Error;
};

class OutputIoError : public Error {
public:
    OutputIoError(std::string path, const std::string& what);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace fsmr
