#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riot {

enum class ErrorCode {
    // workflow
    CycleDetected,
    DanglingEdge,
    EmptyWorkflow,
    MalformedInput,
    UnsupportedFeature,
    UnknownShape,
    TooSmall,
    // catalog
    DuplicateName,
    NonPositiveField,
    UnknownType,
    // sim
    IncompleteSchedule,
    NonTopologicalOrder,
    // riot
    LengthMismatch,
    DegenerateAnchors,
    // metrics
    EmptyInput,
    DegenerateBounds,
    OutOfRange,
    NotEnoughPoints,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; `code()` lets callers
// (the CLI in particular) tell user-input problems apart.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string const& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace riot
