#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bimcir {

enum class Errc {
    NonPositiveParameter,
    NonPositiveHistory,
    BadHistoryGrid,
    OutOfHistoryRange,
    InvalidGrid,
    NonDivisibleFactor,
    DelayMisaligned,
    GridMismatch,
    InvalidControl,
    NegativeState,
    OutOfRange,
    TooFewPaths,
    BadBarrier,
    SyntaxError,
    UnknownKey,
    ConstraintViolation,
};

std::string_view to_string(Errc code);

/// Exception type used throughout the library. The code identifies the
/// violated contract; the message is meant for humans.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace bimcir
