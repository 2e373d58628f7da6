#include "riot/error.hpp"

namespace riot {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::EmptyWorkflow: return "EmptyWorkflow";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::UnknownShape: return "UnknownShape";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::NonPositiveField: return "NonPositiveField";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::IncompleteSchedule: return "IncompleteSchedule";
    case ErrorCode::NonTopologicalOrder: return "NonTopologicalOrder";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateAnchors: return "DegenerateAnchors";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateBounds: return "DegenerateBounds";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotEnoughPoints: return "NotEnoughPoints";
    }
    return "Unknown";
}

} // namespace riot
