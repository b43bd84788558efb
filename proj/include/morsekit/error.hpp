#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morsekit {

/// Machine-readable failure categories. The CLI reports these names verbatim.
enum class ErrorCode {
    Precision,
    NotAUnit,
    NonIntegral,
    InvalidArgument,
    BoundarySquareNonzero,
    NotAcyclic,
    EvaluationFailure,
    StepCollapse,
    MaxLengthExceeded,
    ValidationLost,
    TransversalityFailure,
    SignInconsistency,
    ChainMapViolation,
    RegularValueError,
    PrecisionExhausted,
    Mismatch,
    LiftAmbiguity,
    ResolutionTooCoarse,
    DegenerateFixedPoint,
    Config,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Precision: return "PrecisionError";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BoundarySquareNonzero: return "BoundarySquareNonzero";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::StepCollapse: return "StepCollapse";
    case ErrorCode::MaxLengthExceeded: return "MaxLengthExceeded";
    case ErrorCode::ValidationLost: return "ValidationLost";
    case ErrorCode::TransversalityFailure: return "TransversalityFailure";
    case ErrorCode::SignInconsistency: return "SignInconsistency";
    case ErrorCode::ChainMapViolation: return "ChainMapViolation";
    case ErrorCode::RegularValueError: return "RegularValueError";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::Mismatch: return "MismatchError";
    case ErrorCode::LiftAmbiguity: return "LiftAmbiguity";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::DegenerateFixedPoint: return "DegenerateFixedPoint";
    case ErrorCode::Config: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace morsekit
