#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riot/catalog.hpp"
#include "riot/metrics.hpp"
#include "riot/sim.hpp"

namespace riot {

inline constexpr std::string_view tool_version = "0.1.0";

enum class Provenance { AnchorSimulated, SurrogateEstimated, Resimulated, Simulated };

std::string_view to_string(Provenance p) noexcept;

struct FrontierEntry {
    sim::Schedule schedule;
    double makespan = 0.0;
    double cost = 0.0;
    std::optional<double> eta; // clustering parameter that produced the entry, if any
    Provenance provenance = Provenance::Simulated;

    [[nodiscard]] std::size_t n_vms() const;
};

/// A scheduler's output: non-dominated schedules plus run bookkeeping.
struct Frontier {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::size_t simulations = 0;
    std::vector<FrontierEntry> entries;

    [[nodiscard]] std::vector<metrics::ObjectivePoint> points() const;
};

/// Keeps the non-dominated entries and sorts them by (makespan, cost).
std::vector<FrontierEntry> pareto_filter(std::vector<FrontierEntry> entries);

/// CSV with header `makespan_s,cost_usd,n_vms,eta,provenance,mapping`, where
/// mapping is the `;`-joined VM type per cluster. Numbers use the shortest
/// round-trip representation so output is byte-stable.
std::string to_csv(Frontier const& frontier);

/// JSON including full schedules and the reproducibility header
/// (seed, catalog hash, tool version).
std::string to_json(Frontier const& frontier, workflow::Workflow const& wf, catalog::Catalog const& catalog);

/// Reads objective points back from either serialized form. Throws MalformedInput.
std::vector<metrics::ObjectivePoint> read_frontier_points(std::string_view text);

/// Shortest decimal text that parses back to `v`.
std::string format_number(double v);

} // namespace riot
