#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibertrace {

enum class ErrorKind {
    // diagram validation
    Syntax,
    Slot,
    SlotMismatch,
    NotAKnot,
    NotClosed,
    EmptyWord,
    // geometry and genericity
    DegenerateConfig,
    Degeneracy,
    ZeroChord,
    OriginIncidence,
    EqualRho,
    AssemblyMismatch,
    DegenerateTangent,
    // invariants
    OrientationClash,
    InvariantViolation,
    // writhes
    LinkingOne,
    MismatchedM,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message);
    std::size_t position() const { return position_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

}  // namespace fibertrace
