#include "riot/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "riot/error.hpp"

namespace riot::baselines {

Frontier random_search(workflow::Workflow const& wf, Budget budget, sched::Rng& rng, sim::Simulator const& simulator) {
    if (budget.max_simulations == 0) throw Error(ErrorCode::MalformedInput, "budget must allow one simulation");
    auto const& catalog = simulator.catalog();
    std::size_t const n = wf.size();
    std::size_t const max_k = std::min(n, 2 * catalog.size());
    auto const order = sched::b_rank(wf, rng);
    std::size_t const calls_before = simulator.calls();

    std::vector<FrontierEntry> entries;
    entries.reserve(budget.max_simulations);
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> labels(n), relabel;
    for (std::size_t draw = 0; draw < budget.max_simulations; ++draw) {
        std::size_t const k = 1 + sched::uniform_index(rng, max_k);
        for (auto& l : labels) l = sched::uniform_index(rng, k);

        relabel.assign(k, unset);
        std::size_t used = 0;
        sim::Schedule s;
        s.task_to_cluster.resize(n);
        for (std::size_t t = 0; t < n; ++t) {
            if (relabel[labels[t]] == unset) relabel[labels[t]] = used++;
            s.task_to_cluster[t] = relabel[labels[t]];
        }
        std::vector<catalog::TypeIndex> types(used);
        for (auto& ty : types) ty = sched::uniform_index(rng, catalog.size());
        for (auto ty : types) s.cluster_to_type.push_back(catalog.type(ty).name);
        s.secondary_order = order;

        auto eval = simulator(wf, s.task_to_cluster, types, order);
        entries.push_back({std::move(s), eval.makespan, eval.cost, std::nullopt, Provenance::Simulated});
    }

    Frontier f;
    f.algorithm = "random";
    f.simulations = simulator.calls() - calls_before;
    f.entries = pareto_filter(std::move(entries));
    return f;
}

Frontier heft_schedule(workflow::Workflow const& wf, sim::Simulator const& simulator) {
    auto const& catalog = simulator.catalog();
    std::size_t const n = wf.size();
    std::size_t const pool = catalog.size();

    auto const rank = sched::b_ranks(wf);
    std::vector<workflow::TaskIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rank[a] > rank[b]; });

    std::vector<double> available(pool, 0.0);
    std::vector<double> finish(n, 0.0);
    std::vector<std::size_t> vm_of(n, 0);

    for (auto t : order) {
        double best_finish = std::numeric_limits<double>::infinity();
        std::size_t best_vm = 0;
        for (std::size_t v = 0; v < pool; ++v) {
            auto const& type = catalog.type(v);
            double ready = 0.0;
            for (auto const& l : wf.predecessors(t)) {
                double arrive = finish[l.task];
                if (vm_of[l.task] != v) {
                    double bw = std::min(type.bandwidth_mbps, catalog.type(vm_of[l.task]).bandwidth_mbps);
                    arrive += l.bytes / (bw * catalog::bytes_per_megabyte);
                }
                ready = std::max(ready, arrive);
            }
            double const eft = std::max(ready, available[v]) + wf.task(t).workload / type.compute_units;
            if (eft < best_finish) {
                best_finish = eft;
                best_vm = v;
            }
        }
        vm_of[t] = best_vm;
        finish[t] = best_finish;
        available[best_vm] = best_finish;
    }

    // Only VMs that received work become clusters, numbered by first use.
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> cluster_of_vm(pool, unset);
    std::vector<catalog::TypeIndex> types;
    sim::Schedule s;
    s.task_to_cluster.resize(n);
    for (auto t : order) {
        auto& c = cluster_of_vm[vm_of[t]];
        if (c == unset) {
            c = types.size();
            types.push_back(vm_of[t]);
            s.cluster_to_type.push_back(catalog.type(vm_of[t]).name);
        }
        s.task_to_cluster[t] = c;
    }
    s.secondary_order = order;

    std::size_t const calls_before = simulator.calls();
    auto eval = simulator(wf, s.task_to_cluster, types, order);
    Frontier f;
    f.algorithm = "heft";
    f.simulations = simulator.calls() - calls_before;
    f.entries.push_back({std::move(s), eval.makespan, eval.cost, std::nullopt, Provenance::Simulated});
    return f;
}

} // namespace riot::baselines
