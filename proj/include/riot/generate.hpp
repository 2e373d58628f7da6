#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riot/workflow.hpp"

namespace riot::workflow {

enum class Shape { Montage, Epigenomics, Inspiral, CyberShake, Sipht, Pipeline, ForkJoin };

/// Accepts "montage-like", "pipeline", ... ; throws UnknownShape otherwise.
Shape parse_shape(std::string_view name);
std::string_view to_string(Shape shape) noexcept;
std::vector<Shape> all_shapes();

/// Log-uniform sampling ranges for synthesized task attributes.
struct GeneratorConfig {
    double min_workload = 10.0;   // seconds at 1 compute unit
    double max_workload = 2000.0;
    double min_bytes = 1.0e6;
    double max_bytes = 1.0e9;
};

/// Smallest task count each shape can be built with.
std::size_t minimum_tasks(Shape shape) noexcept;

/// Deterministic synthetic workflow of exactly `n_tasks` declared tasks whose
/// fan-in/fan-out pattern follows the named family. Throws TooSmall when
/// `n_tasks` is below `minimum_tasks(shape)` (never less than 3).
Workflow generate(Shape shape, std::size_t n_tasks, std::uint64_t seed,
                  GeneratorConfig const& config = {});

} // namespace riot::workflow
