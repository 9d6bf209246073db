#pragma once

#include <stdexcept>
#include <string>

namespace conc {

// Machine-readable error codes; the CLI maps these to exit status 2 and a
// JSON error object, so the set of names is part of the external interface.
enum class ErrorCode {
    Overflow,
    NonConvergence,
    Collision,
    NotCoprime,
    DegreeTooLarge,
    ZeroGridSum,
    RationalInput,
    NotFound,
    IllegalRegime,
    ResourceLimit,
    TargetUnreachable,
    GapViolation,
    Divergence,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::Collision: return "Collision";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::ZeroGridSum: return "ZeroGridSum";
        case ErrorCode::RationalInput: return "RationalInput";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::IllegalRegime: return "IllegalRegime";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::TargetUnreachable: return "TargetUnreachable";
        case ErrorCode::GapViolation: return "GapViolation";
        case ErrorCode::Divergence: return "Divergence";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace conc
