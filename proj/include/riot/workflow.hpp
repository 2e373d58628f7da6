#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace riot::workflow {

using TaskIndex = std::size_t;

struct Task {
    std::string id;
    double workload = 0.0; // seconds on a 1-compute-unit machine
    std::optional<std::string> label;
    bool synthetic = false; // inserted by validate() to get a single start/exit
};

struct DataEdge {
    std::string from;
    std::string to;
    double bytes = 0.0;
};

/// Adjacency entry: the neighbouring task and the bytes moved along the edge.
struct Link {
    TaskIndex task;
    double bytes;
};

/// A validated DAG with a single start and exit task.
///
/// Tasks are stored densely; `TaskIndex` values are positions in `tasks()`.
/// Successor and predecessor lists keep the order in which edges were
/// declared, which fixes the summation order of transfer times.
/// Instances are immutable once built and safe to share between threads.
class Workflow {
public:
    [[nodiscard]] std::span<Task const> tasks() const noexcept { return tasks_; }
    [[nodiscard]] std::span<DataEdge const> edges() const noexcept { return edges_; }
    [[nodiscard]] std::size_t size() const noexcept { return tasks_.size(); }
    [[nodiscard]] Task const& task(TaskIndex i) const { return tasks_.at(i); }

    [[nodiscard]] TaskIndex start() const noexcept { return start_; }
    [[nodiscard]] TaskIndex exit() const noexcept { return exit_; }

    [[nodiscard]] std::span<Link const> successors(TaskIndex i) const { return succ_.at(i); }
    [[nodiscard]] std::span<Link const> predecessors(TaskIndex i) const { return pred_.at(i); }

    /// Deterministic topological order (Kahn's algorithm, lowest index first).
    [[nodiscard]] std::span<TaskIndex const> topological_order() const noexcept { return topo_; }

    [[nodiscard]] std::optional<TaskIndex> find(std::string_view id) const;
    [[nodiscard]] TaskIndex index_of(std::string_view id) const;

    /// Number of tasks that were declared by the input (synthetic ones excluded).
    [[nodiscard]] std::size_t real_task_count() const noexcept;

    /// In-degree counting only edges whose source is a declared task.
    [[nodiscard]] std::size_t real_in_degree(TaskIndex i) const;

    friend bool operator==(Workflow const& a, Workflow const& b);

private:
    friend Workflow validate(std::vector<Task>, std::vector<DataEdge>);

    std::vector<Task> tasks_;
    std::vector<DataEdge> edges_;
    std::vector<std::vector<Link>> succ_;
    std::vector<std::vector<Link>> pred_;
    std::vector<TaskIndex> topo_;
    std::unordered_map<std::string, TaskIndex> by_id_;
    TaskIndex start_ = 0;
    TaskIndex exit_ = 0;
};

inline constexpr std::string_view synthetic_start_id = "__start__";
inline constexpr std::string_view synthetic_exit_id = "__exit__";

/// Checks the raw graph and normalizes it to a single start/exit task.
///
/// Multiple sources (sinks) get a synthetic zero-workload start (exit) task
/// connected by zero-byte edges. Throws `Error` with CycleDetected,
/// DanglingEdge, EmptyWorkflow or MalformedInput.
Workflow validate(std::vector<Task> tasks, std::vector<DataEdge> edges);

Workflow parse_json(std::string_view text);

/// Native JSON form. Synthetic tasks are omitted so the output re-parses to
/// the same workflow.
std::string to_json(Workflow const& wf);

Workflow parse_dax(std::string_view xml_text);

} // namespace riot::workflow
