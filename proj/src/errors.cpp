#include "fsmr/errors.hpp"

#include <fmt/format.h>

#include <utility>

namespace fsmr {

ParseError::ParseError(std::size_t line, std::size_t column, std::string message)
    : Error(fmt::format("{}:{}: {}", line, column, message)),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

MissingTransition::MissingTransition(std::string state, std::string symbol)
    : ValidationError(fmt::format("missing transition for state '{}' on symbol '{}'", state, symbol)),
      state_(std::move(state)),
      symbol_(std::move(symbol)) {}

UnknownState::UnknownState(std::string name)
    : ValidationError(fmt::format("unknown state '{}'", name)), name_(std::move(name)) {}

UnknownSymbol::UnknownSymbol(std::string symbol)
    : ValidationError(fmt::format("symbol '{}' is not in the alphabet", symbol)), symbol_(std::move(symbol)) {}

StartNotInStates::StartNotInStates(std::string start)
    : ValidationError(fmt::format("start state '{}' is not declared in states", start)), start_(std::move(start)) {}

DuplicateName::DuplicateName(std::string name)
    : ValidationError(fmt::format("'{}' is declared more than once", name)), name_(std::move(name)) {}

InvalidName::InvalidName(std::string name, std::string reason)
    : ValidationError(fmt::format("invalid name '{}': {}", name, reason)), name_(std::move(name)) {}

AmbiguousTransition::AmbiguousTransition(std::string state, std::string symbol)
    : ValidationError(fmt::format("state '{}' has more than one transition on '{}'", state, symbol)) {}

TrapNameCollision::TrapNameCollision(std::string name)
    : ValidationError(fmt::format("trap state name '{}' is already a state", name)) {}

InvalidInputSymbol::InvalidInputSymbol(std::size_t position, std::string symbol)
    : Error(fmt::format("input symbol '{}' at position {} is not in the alphabet", symbol, position)),
      position_(position),
      symbol_(std::move(symbol)) {}

RegexSyntaxError::RegexSyntaxError(std::size_t position, std::string expected)
    : Error(fmt::format("regex syntax error at position {}: expected {}", position, expected)),
      position_(position),
      expected_(std::move(expected)) {}

OutputIoError::OutputIoError(std::string path, const std::string& what)
    : Error(fmt::format("cannot write '{}': {}", path, what)), path_(std::move(path)) {}

}  // namespace fsmr
