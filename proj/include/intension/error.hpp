#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace intension {

enum class ErrorKind {
    DuplicateIndex,
    IndexOutOfRange,
    SpaceMismatch,
    TooManyFree,
    TooManyVariables,
    EmptyGoalSet,
    SampleTooLarge,
    BadWidth,
    BadPeriod,
    BadSpec,
    ExactnessInfeasible,
    EmptyEvalSet,
    InvalidPolicy,
    ParseError,
    MismatchedRuns,
};

// Single exception type carrying a machine-checkable kind. ParseError
// additionally carries the 1-based input line when known.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, int line = -1)
        : std::runtime_error(std::move(message)), kind_(kind), line_(line) {}

    ErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ErrorKind kind_;
    int line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message, int line = -1) {
    throw Error(kind, message, line);
}

} // namespace intension
