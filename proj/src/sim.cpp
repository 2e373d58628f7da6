#include "riot/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>

#include "riot/error.hpp"

namespace riot::sim {

Duration task_duration(workflow::Workflow const& wf, TaskIndex task, catalog::Catalog const& catalog,
                       std::span<ClusterId const> task_to_cluster,
                       std::span<catalog::TypeIndex const> cluster_types) {
    auto type_of = [&](TaskIndex t) -> catalog::VmType const& {
        auto c = task_to_cluster[t];
        if (c >= cluster_types.size() || cluster_types[c] >= catalog.size())
            throw Error(ErrorCode::UnknownType, "no VM type for cluster " + std::to_string(c));
        return catalog.type(cluster_types[c]);
    };
    auto const& own = type_of(task);
    double filetime = 0.0;
    for (auto const& link : wf.successors(task)) {
        if (task_to_cluster[link.task] == task_to_cluster[task]) continue;
        double const bw = std::min(own.bandwidth_mbps, type_of(link.task).bandwidth_mbps);
        filetime += link.bytes / (bw * catalog::bytes_per_megabyte);
    }
    double const compute = wf.task(task).workload / own.compute_units;
    return {compute + filetime, filetime};
}

double billed_cost(std::span<VmSpan const> spans, std::span<catalog::TypeIndex const> cluster_types,
                   catalog::Catalog const& catalog) {
    double cost = 0.0;
    for (std::size_t c = 0; c < spans.size(); ++c) {
        if (!spans[c].used) continue;
        double const span = spans[c].shutdown - spans[c].boot;
        if (span <= 0.0) continue;
        cost += std::ceil(span / catalog.billing_seconds()) * catalog.type(cluster_types[c]).price_per_hour;
    }
    return cost;
}

void check_schedule(workflow::Workflow const& wf, Schedule const& schedule, catalog::Catalog const& catalog) {
    std::size_t const n = wf.size();
    if (schedule.task_to_cluster.size() != n)
        throw Error(ErrorCode::IncompleteSchedule, "task_to_cluster covers " +
                                                       std::to_string(schedule.task_to_cluster.size()) +
                                                       " of " + std::to_string(n) + " tasks");
    for (TaskIndex t = 0; t < n; ++t)
        if (schedule.task_to_cluster[t] >= schedule.cluster_to_type.size())
            throw Error(ErrorCode::IncompleteSchedule,
                        "task '" + wf.task(t).id + "' is on cluster " + std::to_string(schedule.task_to_cluster[t]) +
                            " which has no VM type");
    for (auto const& name : schedule.cluster_to_type) (void)catalog.index_of(name);

    if (schedule.secondary_order.size() != n)
        throw Error(ErrorCode::IncompleteSchedule, "secondary order lists " +
                                                       std::to_string(schedule.secondary_order.size()) +
                                                       " of " + std::to_string(n) + " tasks");
    std::vector<std::size_t> pos(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        auto t = schedule.secondary_order[p];
        if (t >= n || pos[t] != n)
            throw Error(ErrorCode::IncompleteSchedule, "secondary order is not a permutation of the tasks");
        pos[t] = p;
    }
    for (auto const& e : wf.edges()) {
        auto u = wf.index_of(e.from);
        auto v = wf.index_of(e.to);
        if (pos[u] > pos[v])
            throw Error(ErrorCode::NonTopologicalOrder, "'" + e.to + "' precedes its predecessor '" + e.from + "'");
    }
}

Evaluation simulate_unchecked(workflow::Workflow const& wf, std::span<ClusterId const> task_to_cluster,
                              std::span<catalog::TypeIndex const> cluster_types,
                              std::span<TaskIndex const> order, catalog::Catalog const& catalog) {
    std::size_t const n = wf.size();
    std::size_t const k = cluster_types.size();

    Evaluation eval;
    eval.task_times.resize(n);
    eval.vm_spans.resize(k);

    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[order[p]] = p;

    std::vector<std::size_t> waiting(n);
    for (TaskIndex t = 0; t < n; ++t) {
        auto d = task_duration(wf, t, catalog, task_to_cluster, cluster_types);
        eval.task_times[t].duration = d.duration;
        eval.task_times[t].filetime = d.filetime;
        waiting[t] = wf.predecessors(t).size();
    }

    // Per-VM ready set keyed by secondary-order position.
    using ReadyQueue = std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>;
    std::vector<ReadyQueue> ready(k);
    std::vector<char> busy(k, 0);
    std::vector<ClusterId> touched;

    // (finish time, order position) so simultaneous finishes pop deterministically.
    using Event = std::pair<double, std::size_t>;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;

    auto make_ready = [&](TaskIndex t) {
        auto c = task_to_cluster[t];
        ready[c].push(pos[t]);
        touched.push_back(c);
    };
    auto dispatch = [&](double now) {
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto c : touched) {
            if (busy[c] || ready[c].empty()) continue;
            TaskIndex t = order[ready[c].top()];
            ready[c].pop();
            busy[c] = 1;
            auto& tt = eval.task_times[t];
            tt.start = now;
            tt.finish = now + tt.duration;
            auto& span = eval.vm_spans[c];
            if (!span.used) {
                span = {now, tt.finish, true};
            } else {
                span.boot = std::min(span.boot, now);
                span.shutdown = std::max(span.shutdown, tt.finish);
            }
            events.emplace(tt.finish, pos[t]);
        }
        touched.clear();
    };

    for (TaskIndex t = 0; t < n; ++t)
        if (waiting[t] == 0) make_ready(t);
    dispatch(0.0);

    while (!events.empty()) {
        double const now = events.top().first;
        while (!events.empty() && events.top().first == now) {
            TaskIndex t = order[events.top().second];
            events.pop();
            auto c = task_to_cluster[t];
            busy[c] = 0;
            touched.push_back(c);
            for (auto const& link : wf.successors(t))
                if (--waiting[link.task] == 0) make_ready(link.task);
        }
        dispatch(now);
    }

    eval.makespan = eval.task_times[wf.exit()].finish;
    eval.cost = billed_cost(eval.vm_spans, cluster_types, catalog);
    return eval;
}

Evaluation simulate(workflow::Workflow const& wf, Schedule const& schedule, catalog::Catalog const& catalog) {
    check_schedule(wf, schedule, catalog);
    std::vector<catalog::TypeIndex> types;
    types.reserve(schedule.cluster_to_type.size());
    for (auto const& name : schedule.cluster_to_type) types.push_back(catalog.index_of(name));
    return simulate_unchecked(wf, schedule.task_to_cluster, types, schedule.secondary_order, catalog);
}

Evaluation Simulator::operator()(workflow::Workflow const& wf, Schedule const& schedule) const {
    ++calls_;
    return simulate(wf, schedule, *catalog_);
}

Evaluation Simulator::operator()(workflow::Workflow const& wf, std::span<ClusterId const> task_to_cluster,
                                 std::span<catalog::TypeIndex const> cluster_types,
                                 std::span<TaskIndex const> order) const {
    ++calls_;
    return simulate_unchecked(wf, task_to_cluster, cluster_types, order, *catalog_);
}

} // namespace riot::sim
