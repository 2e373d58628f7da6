#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "riot/catalog.hpp"
#include "riot/frontier.hpp"
#include "riot/sim.hpp"
#include "riot/workflow.hpp"

namespace riot::sched {

using workflow::TaskIndex;
using workflow::Workflow;
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);
/// Uniform integer in [0, n). `n` must be positive.
std::size_t uniform_index(Rng& rng, std::size_t n);
/// Independent sub-stream seed: splitmix64 of (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

std::vector<double> default_eta_grid();

struct RiotParams {
    std::size_t n_random = 500;      // random mappings scored per clustering
    std::size_t n_anchor_extra = 30; // random anchors on top of the iso-mappings
    std::vector<double> eta_grid = default_eta_grid();
    double distance_alpha = 1.0;
    std::uint64_t seed = 0;

    /// Throws MalformedInput on out-of-range values.
    void validate() const;
};

struct Clustering {
    std::vector<sim::ClusterId> task_to_cluster; // by task index
    std::size_t n_clusters = 0;
};

struct Objectives {
    double makespan = 0.0;
    double cost = 0.0;
};

/// One VM type per cluster; type indices double as price ranks.
struct TypeMapping {
    std::vector<catalog::TypeIndex> assignment;
    std::optional<Objectives> objectives;
    Provenance provenance = Provenance::SurrogateEstimated;
};

/// Longest hop distance to the exit task: rank(exit) = 1,
/// rank(i) = 1 + max rank over successors. Indexed by task.
std::vector<std::size_t> b_ranks(Workflow const& wf);

/// All tasks by decreasing rank, equal ranks shuffled by `rng`. Always a
/// topological order since every predecessor outranks its successors.
std::vector<TaskIndex> b_rank(Workflow const& wf, Rng& rng);

/// The start task plus every declared task whose in-degree is among the top
/// third of the distinct in-degree values of declared tasks. Synthetic
/// tasks and edges from them do not count.
std::unordered_set<TaskIndex> critical_tasks(Workflow const& wf);

/// p = 1 for critical tasks, otherwise eta times the mean p of the
/// predecessors. Indexed by task.
std::vector<double> assign_probabilities(Workflow const& wf, double eta);

/// Visits tasks in topological order; each opens a new cluster with its
/// probability p, otherwise joins a random existing cluster (critical tasks)
/// or a random cluster already holding one of its predecessors.
Clustering task_group(Workflow const& wf, double eta, Rng& rng);

/// (sum |rank(x_i) - rank(y_i)|^alpha)^(1/alpha). Throws LengthMismatch.
double mapping_distance(std::span<catalog::TypeIndex const> x, std::span<catalog::TypeIndex const> y,
                        double alpha = 1.0);
double mapping_distance(std::span<std::string const> x, std::span<std::string const> y,
                        catalog::Catalog const& catalog, double alpha = 1.0);

/// Estimates objectives of `candidate` by extrapolating from the nearest
/// anchor toward the anchor furthest from it, projected onto that direction:
/// o = o_near + dist(near, r) / dist(near, far) * cos(theta) * (o_far - o_near),
/// with cos(theta) the normalized dot product of (r - near) and (far - near).
/// Anchors must carry objectives. Throws DegenerateAnchors when every anchor
/// is the same mapping.
Objectives surrogate_estimate(std::span<TypeMapping const> anchors, std::span<catalog::TypeIndex const> candidate,
                              double alpha = 1.0);

/// n_T iso-mappings plus `n_anchor_extra` random mappings.
std::vector<TypeMapping> anchor_mappings(std::size_t n_clusters, catalog::Catalog const& catalog,
                                         RiotParams const& params, Rng& rng);

/// Simulates every anchor, then scores `n_random` random mappings with the
/// surrogate. Returns anchors followed by the scored mappings. Throws
/// DegenerateAnchors (before any simulation) when all anchors coincide.
std::vector<TypeMapping> surrogate_evaluate(Clustering const& clustering, Workflow const& wf,
                                            std::span<TaskIndex const> order, RiotParams const& params, Rng& rng,
                                            sim::Simulator const& simulator);

struct RiotResult {
    Frontier frontier;
    std::size_t simulations = 0;    // true evaluations spent
    std::size_t best_set_size = 0;  // |S_B|, candidates re-simulated
};

/// The full pipeline: one B-Rank order, a clustering and surrogate pass per
/// eta, non-dominated filtering of all candidates, re-simulation of that set
/// and a final non-dominated filter on true objectives.
///
/// Random streams are derived from `params.seed` as: stream 0 for the order,
/// stream 2k+1 for the clustering of eta_grid[k], stream 2k+2 for its
/// surrogate pass.
RiotResult riot_schedule(Workflow const& wf, RiotParams const& params, sim::Simulator const& simulator);

sim::Schedule make_schedule(Clustering const& clustering, std::span<catalog::TypeIndex const> mapping,
                            std::span<TaskIndex const> order, catalog::Catalog const& catalog);

} // namespace riot::sched
