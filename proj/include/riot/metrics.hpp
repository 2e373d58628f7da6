#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace riot::metrics {

struct ObjectivePoint {
    double makespan = 0.0;
    double cost = 0.0;
    std::size_t tag = 0; // caller-defined reference to the schedule behind the point

    friend bool operator==(ObjectivePoint const&, ObjectivePoint const&) = default;
};

/// True when `a` is no worse than `b` in both objectives and strictly better
/// in at least one. A point never dominates itself.
[[nodiscard]] constexpr bool dominates(ObjectivePoint const& a, ObjectivePoint const& b) noexcept {
    return a.makespan <= b.makespan && a.cost <= b.cost && (a.makespan < b.makespan || a.cost < b.cost);
}

/// Non-dominated subset in input order; points with identical objectives are
/// all kept. O(n log n). Throws EmptyInput.
std::vector<ObjectivePoint> nondominated(std::span<ObjectivePoint const> points);

struct Bounds {
    double min_makespan;
    double max_makespan;
    double min_cost;
    double max_cost;
};

/// Component-wise extent of the union of `sets`. Throws EmptyInput.
Bounds bounds_of(std::span<std::vector<ObjectivePoint> const> sets);

struct Normalized {
    std::vector<ObjectivePoint> points;
    bool clamped = false; // some coordinate fell outside the bounds
};

/// Affine map onto the unit square; values beyond the bounds are clamped and
/// flagged. Throws DegenerateBounds when an axis has zero width.
Normalized normalize(std::span<ObjectivePoint const> points, Bounds const& bounds);

/// Area dominated by the points within the unit square, relative to the
/// reference point (1, 1). Throws OutOfRange for points outside [0,1]^2.
double hypervolume(std::span<ObjectivePoint const> normalized);

enum class IgdDirection {
    ReferenceToObtained, // standard IGD: mean over reference points
    ObtainedToReference, // mean over obtained points (a GD-style reading)
};

/// Mean Euclidean distance from each point of one set to its nearest point
/// in the other. Throws EmptyInput.
double igd(std::span<ObjectivePoint const> frontier, std::span<ObjectivePoint const> reference,
           IgdDirection direction = IgdDirection::ReferenceToObtained);

/// Gap uniformity: mean absolute deviation of consecutive gaps (sorted by
/// makespan) over the mean gap. 0 for two points. Throws NotEnoughPoints.
double spread(std::span<ObjectivePoint const> normalized);


struct FrontierScore {
    std::size_t n_points = 0;
    double hypervolume = 0.0;
    double igd = 0.0;
    std::optional<double> spread; // empty when there are fewer than two points
};

struct Comparison {
    Bounds bounds{};
    bool padded_makespan = false; // zero-width axis widened by one unit
    bool padded_cost = false;
    std::vector<ObjectivePoint> reference; // non-dominated union of all inputs
    std::vector<FrontierScore> scores;     // one per input, same order
};

/// Scores several frontiers against each other: shared bounds from the union
/// of all inputs, the union's non-dominated set as reference front, then
/// hypervolume, IGD and spread in normalized space. Each input is reduced to
/// its own non-dominated subset first. Throws EmptyInput.
Comparison compare(std::span<std::vector<ObjectivePoint> const> frontiers,
                   IgdDirection direction = IgdDirection::ReferenceToObtained);

} // namespace riot::metrics
