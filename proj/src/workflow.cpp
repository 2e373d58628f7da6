#include "riot/workflow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <utility>

#include "riot/error.hpp"

namespace riot::workflow {

namespace {

// Returns one cycle among the tasks Kahn's algorithm could not order.
std::vector<TaskIndex> find_cycle(std::vector<std::vector<Link>> const& succ,
                                  std::vector<std::size_t> const& remaining_in) {
    std::size_t const n = succ.size();
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(n, Mark::White);
    std::vector<TaskIndex> stack;

    std::function<bool(TaskIndex)> visit = [&](TaskIndex u) -> bool {
        mark[u] = Mark::Grey;
        stack.push_back(u);
        for (auto const& link : succ[u]) {
            if (remaining_in[link.task] == 0) continue;
            if (mark[link.task] == Mark::Grey) {
                auto it = std::find(stack.begin(), stack.end(), link.task);
                stack.erase(stack.begin(), it);
                return true;
            }
            if (mark[link.task] == Mark::White && visit(link.task)) return true;
        }
        stack.pop_back();
        mark[u] = Mark::Black;
        return false;
    };

    for (TaskIndex u = 0; u < n; ++u) {
        if (remaining_in[u] > 0 && mark[u] == Mark::White && visit(u)) return stack;
    }
    return {};
}

} // namespace

std::optional<TaskIndex> Workflow::find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

TaskIndex Workflow::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw Error(ErrorCode::MalformedInput, "unknown task id '" + std::string(id) + "'");
}

std::size_t Workflow::real_task_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tasks_.begin(), tasks_.end(), [](Task const& t) { return !t.synthetic; }));
}

std::size_t Workflow::real_in_degree(TaskIndex i) const {
    auto const& preds = pred_.at(i);
    return static_cast<std::size_t>(std::count_if(
        preds.begin(), preds.end(), [&](Link const& l) { return !tasks_[l.task].synthetic; }));
}

bool operator==(Workflow const& a, Workflow const& b) {
    auto same_task = [](Task const& x, Task const& y) {
        return x.id == y.id && x.workload == y.workload && x.label == y.label &&
               x.synthetic == y.synthetic;
    };
    auto same_edge = [](DataEdge const& x, DataEdge const& y) {
        return x.from == y.from && x.to == y.to && x.bytes == y.bytes;
    };
    return a.start_ == b.start_ && a.exit_ == b.exit_ &&
           std::equal(a.tasks_.begin(), a.tasks_.end(), b.tasks_.begin(), b.tasks_.end(), same_task) &&
           std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(), same_edge);
}

Workflow validate(std::vector<Task> tasks, std::vector<DataEdge> edges) {
    if (tasks.empty()) throw Error(ErrorCode::EmptyWorkflow, "workflow declares no tasks");

    Workflow wf;
    for (TaskIndex i = 0; i < tasks.size(); ++i) {
        auto const& t = tasks[i];
        if (t.id.empty()) throw Error(ErrorCode::MalformedInput, "task with empty id");
        if (!std::isfinite(t.workload) || t.workload < 0.0)
            throw Error(ErrorCode::MalformedInput, "task '" + t.id + "' has negative or non-finite workload");
        if (!wf.by_id_.emplace(t.id, i).second)
            throw Error(ErrorCode::MalformedInput, "duplicate task id '" + t.id + "'");
    }

    std::set<std::pair<TaskIndex, TaskIndex>> seen;
    for (auto const& e : edges) {
        auto from = wf.by_id_.find(e.from);
        if (from == wf.by_id_.end()) throw Error(ErrorCode::DanglingEdge, "edge references missing task '" + e.from + "'");
        auto to = wf.by_id_.find(e.to);
        if (to == wf.by_id_.end()) throw Error(ErrorCode::DanglingEdge, "edge references missing task '" + e.to + "'");
        if (!std::isfinite(e.bytes) || e.bytes < 0.0)
            throw Error(ErrorCode::MalformedInput, "edge " + e.from + "->" + e.to + " has negative or non-finite size");
        if (from->second == to->second) throw Error(ErrorCode::CycleDetected, "self-loop on '" + e.from + "'");
        if (!seen.emplace(from->second, to->second).second)
            throw Error(ErrorCode::MalformedInput, "duplicate edge " + e.from + "->" + e.to);
    }

    wf.tasks_ = std::move(tasks);
    wf.edges_ = std::move(edges);

    auto rebuild_adjacency = [&wf] {
        std::size_t const n = wf.tasks_.size();
        wf.succ_.assign(n, {});
        wf.pred_.assign(n, {});
        for (auto const& e : wf.edges_) {
            TaskIndex u = wf.by_id_.at(e.from);
            TaskIndex v = wf.by_id_.at(e.to);
            wf.succ_[u].push_back({v, e.bytes});
            wf.pred_[v].push_back({u, e.bytes});
        }
    };
    rebuild_adjacency();

    // Kahn on the declared graph first so cycles are reported before any
    // synthetic nodes are added.
    std::size_t const n = wf.tasks_.size();
    std::vector<std::size_t> in(n);
    for (TaskIndex i = 0; i < n; ++i) in[i] = wf.pred_[i].size();
    std::priority_queue<TaskIndex, std::vector<TaskIndex>, std::greater<>> ready;
    for (TaskIndex i = 0; i < n; ++i)
        if (in[i] == 0) ready.push(i);
    std::size_t ordered = 0;
    while (!ready.empty()) {
        TaskIndex u = ready.top();
        ready.pop();
        ++ordered;
        for (auto const& l : wf.succ_[u])
            if (--in[l.task] == 0) ready.push(l.task);
    }
    if (ordered != n) {
        auto cycle = find_cycle(wf.succ_, in);
        std::string msg = "cycle:";
        for (auto t : cycle) msg += " " + wf.tasks_[t].id + " ->";
        if (!cycle.empty()) msg += " " + wf.tasks_[cycle.front()].id;
        throw Error(ErrorCode::CycleDetected, msg);
    }

    std::vector<TaskIndex> sources, sinks;
    for (TaskIndex i = 0; i < n; ++i) {
        if (wf.pred_[i].empty()) sources.push_back(i);
        if (wf.succ_[i].empty()) sinks.push_back(i);
    }

    auto add_synthetic = [&wf](std::string_view base) {
        std::string id(base);
        while (wf.by_id_.contains(id)) id += "_";
        wf.by_id_.emplace(id, wf.tasks_.size());
        wf.tasks_.push_back(Task{id, 0.0, std::nullopt, true});
        return id;
    };

    if (sources.size() > 1) {
        auto id = add_synthetic(synthetic_start_id);
        for (auto s : sources) wf.edges_.push_back({id, wf.tasks_[s].id, 0.0});
    }
    if (sinks.size() > 1) {
        auto id = add_synthetic(synthetic_exit_id);
        for (auto s : sinks) wf.edges_.push_back({wf.tasks_[s].id, id, 0.0});
    }
    rebuild_adjacency();

    std::size_t const total = wf.tasks_.size();
    in.assign(total, 0);
    for (TaskIndex i = 0; i < total; ++i) in[i] = wf.pred_[i].size();
    for (TaskIndex i = 0; i < total; ++i)
        if (in[i] == 0) ready.push(i);
    wf.topo_.clear();
    while (!ready.empty()) {
        TaskIndex u = ready.top();
        ready.pop();
        wf.topo_.push_back(u);
        for (auto const& l : wf.succ_[u])
            if (--in[l.task] == 0) ready.push(l.task);
    }

    wf.start_ = wf.topo_.front();
    wf.exit_ = wf.topo_.back();
    // With one source and one sink in an acyclic graph every task lies on a
    // source-to-sink path, so reachability holds by construction.
    return wf;
}

} // namespace riot::workflow
