#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace branchdecide {

enum class ErrorKind {
    WeightSumError,
    WeightRangeError,
    EmptyGame,
    EventMismatch,
    AlphabetMismatch,
    InvalidAlphabet,
    InvalidScenario,
    NotStrictPreference,
    InconsistentPreorder,
    DegenerateNormalization,
    GridTooLarge,
    InvalidArgument,
    ParseError,
    UnknownReference,
    DuplicateName,
    DivisionByZero,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is the stable, matchable part;
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// what() without the kind prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

}  // namespace branchdecide
