#include "branchdecide/error.hpp"

namespace branchdecide {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::WeightSumError: return "WeightSumError";
        case ErrorKind::WeightRangeError: return "WeightRangeError";
        case ErrorKind::EmptyGame: return "EmptyGame";
        case ErrorKind::EventMismatch: return "EventMismatch";
        case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorKind::InvalidAlphabet: return "InvalidAlphabet";
        case ErrorKind::InvalidScenario: return "InvalidScenario";
        case ErrorKind::NotStrictPreference: return "NotStrictPreference";
        case ErrorKind::InconsistentPreorder: return "InconsistentPreorder";
        case ErrorKind::DegenerateNormalization: return "DegenerateNormalization";
        case ErrorKind::GridTooLarge: return "GridTooLarge";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownReference: return "UnknownReference";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
    }
    return "Error";
}

}  // namespace branchdecide
