#pragma once

#include <stdexcept>
#include <string>

namespace holling {

enum class ErrorCode {
    InvalidInterval,
    NonPositiveScalar,
    DivisionByZeroInterval,
    OutOfRange,
    NonPositiveInterval,
    InvalidJumpMeasure,
    InvalidState,
    InvalidConfig,
    NonFiniteState,
    HypothesisViolated,
    EmptyWindow,
    ParseError,
    ValidationError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::NonPositiveScalar: return "NonPositiveScalar";
    case ErrorCode::DivisionByZeroInterval: return "DivisionByZeroInterval";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonPositiveInterval: return "NonPositiveInterval";
    case ErrorCode::InvalidJumpMeasure: return "InvalidJumpMeasure";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// Single exception type for the library; inspect code() to dispatch.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace holling
