#pragma once

#include <atomic>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "riot/catalog.hpp"
#include "riot/workflow.hpp"

namespace riot::sim {

using workflow::TaskIndex;
using ClusterId = std::size_t;

/// The three components of a deployment plan.
///
/// `task_to_cluster` and `secondary_order` are indexed by task position in
/// the workflow; `cluster_to_type` holds one catalog type name per cluster.
struct Schedule {
    std::vector<ClusterId> task_to_cluster;
    std::vector<std::string> cluster_to_type;
    std::vector<TaskIndex> secondary_order;

    friend bool operator==(Schedule const&, Schedule const&) = default;
};

struct TaskTiming {
    double start = 0.0;
    double finish = 0.0;
    double duration = 0.0;
    double filetime = 0.0;
};

struct VmSpan {
    double boot = 0.0;     // start of the first task on the VM
    double shutdown = 0.0; // latest finish on the VM
    bool used = false;     // false for clusters with no tasks
};

struct Evaluation {
    double makespan = 0.0;
    double cost = 0.0;
    std::vector<TaskTiming> task_times; // by task index
    std::vector<VmSpan> vm_spans;       // by cluster id
};

struct Duration {
    double duration;
    double filetime;
};

/// Compute time plus outbound transfer to successors placed on other
/// clusters. `cluster_types[c]` is the catalog index of cluster c's type.
/// Throws UnknownType when a referenced type index is out of range.
Duration task_duration(workflow::Workflow const& wf, TaskIndex task, catalog::Catalog const& catalog,
                       std::span<ClusterId const> task_to_cluster,
                       std::span<catalog::TypeIndex const> cluster_types);

/// Hourly billing: every used VM pays ceil(span / billing period) periods;
/// zero-length spans are free.
double billed_cost(std::span<VmSpan const> spans, std::span<catalog::TypeIndex const> cluster_types,
                   catalog::Catalog const& catalog);

/// Throws IncompleteSchedule, NonTopologicalOrder or UnknownType.
void check_schedule(workflow::Workflow const& wf, Schedule const& schedule, catalog::Catalog const& catalog);

/// Event-driven execution of `schedule`: each cluster is one VM running one
/// task at a time; an idle VM starts the ready task that comes first in the
/// secondary order. Deterministic and free of shared state.
Evaluation simulate(workflow::Workflow const& wf, Schedule const& schedule, catalog::Catalog const& catalog);

/// Same as `simulate` but skips validation and takes type indices directly.
/// Used on hot paths where the schedule is known to be well formed.
Evaluation simulate_unchecked(workflow::Workflow const& wf, std::span<ClusterId const> task_to_cluster,
                              std::span<catalog::TypeIndex const> cluster_types,
                              std::span<TaskIndex const> order, catalog::Catalog const& catalog);

/// Wraps `simulate` with a call counter so schedulers can report (and tests
/// can bound) how many true evaluations they spent. Thread-safe.
class Simulator {
public:
    explicit Simulator(catalog::Catalog const& catalog) : catalog_(&catalog) {}

    Evaluation operator()(workflow::Workflow const& wf, Schedule const& schedule) const;
    Evaluation operator()(workflow::Workflow const& wf, std::span<ClusterId const> task_to_cluster,
                          std::span<catalog::TypeIndex const> cluster_types,
                          std::span<TaskIndex const> order) const;

    [[nodiscard]] catalog::Catalog const& catalog() const noexcept { return *catalog_; }
    [[nodiscard]] std::size_t calls() const noexcept { return calls_.load(); }
    void reset_calls() noexcept { calls_.store(0); }

private:
    catalog::Catalog const* catalog_;
    mutable std::atomic<std::size_t> calls_{0};
};

std::string to_json(workflow::Workflow const& wf, Schedule const& schedule);
Schedule schedule_from_json(workflow::Workflow const& wf, std::string_view text);
std::string to_json(workflow::Workflow const& wf, Schedule const& schedule, Evaluation const& eval);

} // namespace riot::sim
