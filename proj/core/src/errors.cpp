#include "fibertrace/errors.hpp"

namespace fibertrace {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::Slot: return "SlotError";
        case ErrorKind::SlotMismatch: return "SlotMismatch";
        case ErrorKind::NotAKnot: return "NotAKnot";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::EmptyWord: return "EmptyWord";
        case ErrorKind::DegenerateConfig: return "DegenerateConfig";
        case ErrorKind::Degeneracy: return "DegeneracyDetected";
        case ErrorKind::ZeroChord: return "ZeroChord";
        case ErrorKind::OriginIncidence: return "OriginIncidence";
        case ErrorKind::EqualRho: return "EqualRho";
        case ErrorKind::AssemblyMismatch: return "AssemblyMismatch";
        case ErrorKind::DegenerateTangent: return "DegenerateTangent";
        case ErrorKind::OrientationClash: return "OrientationClash";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::LinkingOne: return "LinkingOne";
        case ErrorKind::MismatchedM: return "MismatchedM";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorKind::Syntax, "at " + std::to_string(position) + ": " + message), position_(position), detail_(message) {}

}  // namespace fibertrace
