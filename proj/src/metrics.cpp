#include "riot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "riot/error.hpp"

namespace riot::metrics {

namespace {

double distance(ObjectivePoint const& a, ObjectivePoint const& b) {
    double const dx = a.makespan - b.makespan;
    double const dy = a.cost - b.cost;
    return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::size_t> sorted_by_makespan(std::span<ObjectivePoint const> points) {
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].makespan != points[b].makespan) return points[a].makespan < points[b].makespan;
        return points[a].cost < points[b].cost;
    });
    return idx;
}

// Nearest-neighbour distances from each query to `targets`, using a sweep
// over targets sorted by makespan and pruning on the makespan gap.
double mean_nearest(std::span<ObjectivePoint const> queries, std::span<ObjectivePoint const> targets) {
    auto order = sorted_by_makespan(targets);
    std::vector<double> xs(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) xs[i] = targets[order[i]].makespan;

    double total = 0.0;
    for (auto const& q : queries) {
        double best = std::numeric_limits<double>::infinity();
        auto const mid = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), q.makespan) - xs.begin());
        for (std::size_t i = mid; i < xs.size(); ++i) {
            if (xs[i] - q.makespan > best) break;
            best = std::min(best, distance(q, targets[order[i]]));
        }
        for (std::size_t i = mid; i-- > 0;) {
            if (q.makespan - xs[i] > best) break;
            best = std::min(best, distance(q, targets[order[i]]));
        }
        total += best;
    }
    return total / static_cast<double>(queries.size());
}

} // namespace

std::vector<ObjectivePoint> nondominated(std::span<ObjectivePoint const> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points to filter");
    auto order = sorted_by_makespan(points);
    std::vector<char> keep(points.size(), 0);

    // Walk groups of equal makespan. A point survives when it has the lowest
    // cost in its group and beats every cost seen at smaller makespans.
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < order.size();) {
        std::size_t end = g;
        while (end < order.size() && points[order[end]].makespan == points[order[g]].makespan) ++end;
        double const group_min = points[order[g]].cost;
        if (group_min < best_cost) {
            for (std::size_t i = g; i < end && points[order[i]].cost == group_min; ++i) keep[order[i]] = 1;
            best_cost = group_min;
        }
        g = end;
    }

    std::vector<ObjectivePoint> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (keep[i]) out.push_back(points[i]);
    return out;
}

Bounds bounds_of(std::span<std::vector<ObjectivePoint> const> sets) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Bounds b{inf, -inf, inf, -inf};
    bool any = false;
    for (auto const& set : sets) {
        for (auto const& p : set) {
            any = true;
            b.min_makespan = std::min(b.min_makespan, p.makespan);
            b.max_makespan = std::max(b.max_makespan, p.makespan);
            b.min_cost = std::min(b.min_cost, p.cost);
            b.max_cost = std::max(b.max_cost, p.cost);
        }
    }
    if (!any) throw Error(ErrorCode::EmptyInput, "no points to bound");
    return b;
}

Normalized normalize(std::span<ObjectivePoint const> points, Bounds const& bounds) {
    if (!(bounds.max_makespan > bounds.min_makespan))
        throw Error(ErrorCode::DegenerateBounds, "makespan bounds have zero width");
    if (!(bounds.max_cost > bounds.min_cost)) throw Error(ErrorCode::DegenerateBounds, "cost bounds have zero width");

    Normalized out;
    out.points.reserve(points.size());
    auto scale = [&out](double v, double lo, double hi) {
        double x = (v - lo) / (hi - lo);
        if (x < 0.0 || x > 1.0) {
            out.clamped = true;
            x = std::clamp(x, 0.0, 1.0);
        }
        return x;
    };
    for (auto const& p : points)
        out.points.push_back({scale(p.makespan, bounds.min_makespan, bounds.max_makespan),
                              scale(p.cost, bounds.min_cost, bounds.max_cost), p.tag});
    return out;
}

double hypervolume(std::span<ObjectivePoint const> normalized) {
    for (auto const& p : normalized)
        if (!(p.makespan >= 0.0 && p.makespan <= 1.0 && p.cost >= 0.0 && p.cost <= 1.0))
            throw Error(ErrorCode::OutOfRange, "hypervolume expects points inside the unit square");
    if (normalized.empty()) return 0.0;

    auto order = sorted_by_makespan(normalized);
    double area = 0.0;
    double lowest_cost = 1.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        lowest_cost = std::min(lowest_cost, normalized[order[i]].cost);
        double const next_x = i + 1 < order.size() ? normalized[order[i + 1]].makespan : 1.0;
        area += (next_x - normalized[order[i]].makespan) * (1.0 - lowest_cost);
    }
    return area;
}

double igd(std::span<ObjectivePoint const> frontier, std::span<ObjectivePoint const> reference,
           IgdDirection direction) {
    if (frontier.empty() || reference.empty()) throw Error(ErrorCode::EmptyInput, "IGD needs two non-empty sets");
    return direction == IgdDirection::ReferenceToObtained ? mean_nearest(reference, frontier)
                                                          : mean_nearest(frontier, reference);
}

double spread(std::span<ObjectivePoint const> normalized) {
    if (normalized.size() < 2) throw Error(ErrorCode::NotEnoughPoints, "spread needs at least two points");
    auto order = sorted_by_makespan(normalized);
    std::vector<double> gaps;
    for (std::size_t i = 1; i < order.size(); ++i)
        gaps.push_back(distance(normalized[order[i - 1]], normalized[order[i]]));
    double const mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    if (mean == 0.0) return 0.0;
    double deviation = 0.0;
    for (double g : gaps) deviation += std::abs(g - mean);
    return deviation / static_cast<double>(gaps.size()) / mean;
}


Comparison compare(std::span<std::vector<ObjectivePoint> const> frontiers, IgdDirection direction) {
    if (frontiers.empty()) throw Error(ErrorCode::EmptyInput, "nothing to compare");
    std::vector<std::vector<ObjectivePoint>> fronts;
    std::vector<ObjectivePoint> all;
    for (auto const& f : frontiers) {
        if (f.empty()) throw Error(ErrorCode::EmptyInput, "one of the frontiers is empty");
        fronts.push_back(nondominated(f));
        all.insert(all.end(), fronts.back().begin(), fronts.back().end());
    }

    Comparison out;
    out.bounds = bounds_of(fronts);
    if (!(out.bounds.max_makespan > out.bounds.min_makespan)) {
        out.bounds.max_makespan = out.bounds.min_makespan + 1.0;
        out.padded_makespan = true;
    }
    if (!(out.bounds.max_cost > out.bounds.min_cost)) {
        out.bounds.max_cost = out.bounds.min_cost + 1.0;
        out.padded_cost = true;
    }
    out.reference = nondominated(all);
    auto const reference = normalize(out.reference, out.bounds).points;

    for (auto const& f : fronts) {
        auto const norm = normalize(f, out.bounds).points;
        FrontierScore score;
        score.n_points = f.size();
        score.hypervolume = hypervolume(norm);
        score.igd = igd(norm, reference, direction);
        if (norm.size() >= 2) score.spread = spread(norm);
        out.scores.push_back(score);
    }
    return out;
}

} // namespace riot::metrics
