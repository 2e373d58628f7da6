#pragma once

#include <cstddef>

#include "riot/frontier.hpp"
#include "riot/scheduler.hpp"
#include "riot/sim.hpp"
#include "riot/workflow.hpp"

namespace riot::baselines {

struct Budget {
    std::size_t max_simulations = 1;
};

/// Random search sanity baseline. Each of the `budget` draws picks a cluster
/// count k uniformly in [1, min(#tasks, 2 * #types)], labels every task with
/// a uniform cluster in [0, k), relabels the used clusters contiguously in
/// order of first appearance, and gives every cluster a uniform type. All
/// draws share one B-Rank order. Exactly `budget` simulations are spent.
Frontier random_search(workflow::Workflow const& wf, Budget budget, sched::Rng& rng,
                       sim::Simulator const& simulator);

/// Single-objective HEFT-style list scheduler (not MOHEFT): a pool of one VM
/// per catalog type, tasks placed in B-Rank order on the VM with the
/// earliest estimated finish time. Returns the simulated one-point frontier.
Frontier heft_schedule(workflow::Workflow const& wf, sim::Simulator const& simulator);

} // namespace riot::baselines
