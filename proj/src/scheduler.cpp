#include "riot/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "riot/error.hpp"
#include "riot/metrics.hpp"

namespace riot::sched {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(Rng& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> default_eta_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(k / 20.0);
    return grid;
}

void RiotParams::validate() const {
    if (n_random == 0) throw Error(ErrorCode::MalformedInput, "n_random must be positive");
    if (eta_grid.empty()) throw Error(ErrorCode::MalformedInput, "eta grid is empty");
    for (double eta : eta_grid)
        if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::MalformedInput, "eta values must lie in [0, 1]");
    if (!(distance_alpha >= 1.0)) throw Error(ErrorCode::MalformedInput, "distance alpha must be at least 1");
}

std::vector<std::size_t> b_ranks(Workflow const& wf) {
    std::vector<std::size_t> rank(wf.size(), 1);
    auto topo = wf.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        std::size_t best = 0;
        for (auto const& l : wf.successors(*it)) best = std::max(best, rank[l.task]);
        rank[*it] = 1 + best;
    }
    return rank;
}

std::vector<TaskIndex> b_rank(Workflow const& wf, Rng& rng) {
    auto rank = b_ranks(wf);
    std::vector<std::uint64_t> key(wf.size());
    for (auto& k : key) k = rng();
    std::vector<TaskIndex> order(wf.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](TaskIndex a, TaskIndex b) {
        if (rank[a] != rank[b]) return rank[a] > rank[b];
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
    });
    return order;
}

std::unordered_set<TaskIndex> critical_tasks(Workflow const& wf) {
    std::set<std::size_t, std::greater<>> values;
    for (TaskIndex t = 0; t < wf.size(); ++t)
        if (!wf.task(t).synthetic) values.insert(wf.real_in_degree(t));

    std::unordered_set<TaskIndex> critical{wf.start()};
    if (values.empty()) return critical;
    std::size_t const take = (values.size() + 2) / 3;
    auto threshold_it = values.begin();
    std::advance(threshold_it, take - 1);
    std::size_t const threshold = *threshold_it;
    for (TaskIndex t = 0; t < wf.size(); ++t)
        if (!wf.task(t).synthetic && wf.real_in_degree(t) >= threshold) critical.insert(t);
    return critical;
}

std::vector<double> assign_probabilities(Workflow const& wf, double eta) {
    auto critical = critical_tasks(wf);
    std::vector<double> p(wf.size(), 0.0);
    for (auto t : wf.topological_order()) {
        auto preds = wf.predecessors(t);
        if (critical.contains(t) || preds.empty()) {
            p[t] = 1.0;
            continue;
        }
        double sum = 0.0;
        for (auto const& l : preds) sum += p[l.task];
        p[t] = eta * (sum / static_cast<double>(preds.size()));
    }
    return p;
}

Clustering task_group(Workflow const& wf, double eta, Rng& rng) {
    auto critical = critical_tasks(wf);
    auto p = assign_probabilities(wf, eta);
    Clustering out;
    out.task_to_cluster.assign(wf.size(), 0);
    for (auto t : wf.topological_order()) {
        double const u = uniform01(rng);
        if (u < p[t] || out.n_clusters == 0) {
            out.task_to_cluster[t] = out.n_clusters++;
        } else if (critical.contains(t)) {
            out.task_to_cluster[t] = uniform_index(rng, out.n_clusters);
        } else {
            std::set<sim::ClusterId> candidates;
            for (auto const& l : wf.predecessors(t)) candidates.insert(out.task_to_cluster[l.task]);
            auto it = candidates.begin();
            std::advance(it, uniform_index(rng, candidates.size()));
            out.task_to_cluster[t] = *it;
        }
    }
    return out;
}

double mapping_distance(std::span<catalog::TypeIndex const> x, std::span<catalog::TypeIndex const> y, double alpha) {
    if (x.size() != y.size())
        throw Error(ErrorCode::LengthMismatch,
                    "mappings have " + std::to_string(x.size()) + " and " + std::to_string(y.size()) + " clusters");
    if (alpha == 1.0) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] > y[i] ? x[i] - y[i] : y[i] - x[i];
        return static_cast<double>(sum);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sum += std::pow(std::abs(static_cast<double>(x[i]) - static_cast<double>(y[i])), alpha);
    return std::pow(sum, 1.0 / alpha);
}

double mapping_distance(std::span<std::string const> x, std::span<std::string const> y,
                        catalog::Catalog const& catalog, double alpha) {
    std::vector<catalog::TypeIndex> xi, yi;
    for (auto const& n : x) xi.push_back(catalog.index_of(n));
    for (auto const& n : y) yi.push_back(catalog.index_of(n));
    return mapping_distance(xi, yi, alpha);
}

namespace {

// Anchors with each anchor's furthest partner precomputed.
class AnchorSet {
public:
    AnchorSet(std::span<TypeMapping const> anchors, double alpha) : anchors_(anchors), alpha_(alpha) {
        if (anchors.empty()) throw Error(ErrorCode::DegenerateAnchors, "no anchors");
        furthest_.resize(anchors.size());
        far_distance_.resize(anchors.size());
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            double best = -1.0;
            for (std::size_t j = 0; j < anchors.size(); ++j) {
                double d = mapping_distance(anchors[i].assignment, anchors[j].assignment, alpha);
                if (d > best) {
                    best = d;
                    furthest_[i] = j;
                }
            }
            far_distance_[i] = best;
        }
        if (far_distance_[0] == 0.0)
            throw Error(ErrorCode::DegenerateAnchors, "all anchors are the same mapping");
    }

    Objectives estimate(std::span<catalog::TypeIndex const> r) const {
        std::size_t near = 0;
        double d0 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < anchors_.size(); ++i) {
            double d = mapping_distance(anchors_[i].assignment, r, alpha_);
            if (d < d0) {
                d0 = d;
                near = i;
            }
        }
        auto const& an = anchors_[near];
        Objectives const on = *an.objectives;
        if (d0 == 0.0) return on;

        auto const& af = anchors_[furthest_[near]];
        Objectives const of = *af.objectives;
        double const d1 = far_distance_[near];

        double dot = 0.0, nr = 0.0, nf = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            double const vr = static_cast<double>(r[i]) - static_cast<double>(an.assignment[i]);
            double const vf = static_cast<double>(af.assignment[i]) - static_cast<double>(an.assignment[i]);
            dot += vr * vf;
            nr += vr * vr;
            nf += vf * vf;
        }
        double const cos_theta = dot / (std::sqrt(nr) * std::sqrt(nf));
        double const step = d0 / d1 * cos_theta;
        return {on.makespan + step * (of.makespan - on.makespan), on.cost + step * (of.cost - on.cost)};
    }

private:
    std::span<TypeMapping const> anchors_;
    double alpha_;
    std::vector<std::size_t> furthest_;
    std::vector<double> far_distance_;
};

std::vector<catalog::TypeIndex> random_mapping(std::size_t n_clusters, std::size_t n_types, Rng& rng) {
    std::vector<catalog::TypeIndex> m(n_clusters);
    for (auto& t : m) t = uniform_index(rng, n_types);
    return m;
}

bool all_identical(std::span<TypeMapping const> anchors) {
    return std::all_of(anchors.begin(), anchors.end(),
                       [&](TypeMapping const& m) { return m.assignment == anchors.front().assignment; });
}

} // namespace

Objectives surrogate_estimate(std::span<TypeMapping const> anchors, std::span<catalog::TypeIndex const> candidate,
                              double alpha) {
    for (auto const& a : anchors) {
        if (!a.objectives) throw Error(ErrorCode::DegenerateAnchors, "anchor without objectives");
        if (a.assignment.size() != candidate.size())
            throw Error(ErrorCode::LengthMismatch, "anchor and candidate differ in cluster count");
    }
    return AnchorSet(anchors, alpha).estimate(candidate);
}

std::vector<TypeMapping> anchor_mappings(std::size_t n_clusters, catalog::Catalog const& catalog,
                                         RiotParams const& params, Rng& rng) {
    std::vector<TypeMapping> anchors;
    anchors.reserve(catalog.size() + params.n_anchor_extra);
    for (catalog::TypeIndex t = 0; t < catalog.size(); ++t)
        anchors.push_back({std::vector<catalog::TypeIndex>(n_clusters, t), std::nullopt, Provenance::AnchorSimulated});
    for (std::size_t i = 0; i < params.n_anchor_extra; ++i)
        anchors.push_back({random_mapping(n_clusters, catalog.size(), rng), std::nullopt, Provenance::AnchorSimulated});
    return anchors;
}

std::vector<TypeMapping> surrogate_evaluate(Clustering const& clustering, Workflow const& wf,
                                            std::span<TaskIndex const> order, RiotParams const& params, Rng& rng,
                                            sim::Simulator const& simulator) {
    if (clustering.n_clusters == 0) throw Error(ErrorCode::EmptyInput, "clustering has no clusters");
    auto const& catalog = simulator.catalog();
    auto result = anchor_mappings(clustering.n_clusters, catalog, params, rng);
    if (all_identical(result)) throw Error(ErrorCode::DegenerateAnchors, "all anchors are the same mapping");

    for (auto& anchor : result) {
        auto eval = simulator(wf, clustering.task_to_cluster, anchor.assignment, order);
        anchor.objectives = Objectives{eval.makespan, eval.cost};
    }
    std::size_t const n_anchors = result.size();

    std::vector<std::vector<catalog::TypeIndex>> randoms;
    randoms.reserve(params.n_random);
    for (std::size_t i = 0; i < params.n_random; ++i)
        randoms.push_back(random_mapping(clustering.n_clusters, catalog.size(), rng));

    AnchorSet const index(std::span<TypeMapping const>(result.data(), n_anchors), params.distance_alpha);
    std::vector<TypeMapping> scored;
    scored.reserve(randoms.size());
    for (auto& r : randoms) {
        auto est = index.estimate(r);
        scored.push_back({std::move(r), est, Provenance::SurrogateEstimated});
    }
    result.insert(result.end(), std::make_move_iterator(scored.begin()), std::make_move_iterator(scored.end()));
    return result;
}

sim::Schedule make_schedule(Clustering const& clustering, std::span<catalog::TypeIndex const> mapping,
                            std::span<TaskIndex const> order, catalog::Catalog const& catalog) {
    sim::Schedule s;
    s.task_to_cluster = clustering.task_to_cluster;
    for (auto t : mapping) s.cluster_to_type.push_back(catalog.type(t).name);
    s.secondary_order.assign(order.begin(), order.end());
    return s;
}

namespace {

struct Candidate {
    std::size_t eta_index;
    std::vector<catalog::TypeIndex> mapping;
    Objectives objectives;
};

std::vector<Candidate> keep_nondominated(std::vector<Candidate> pool) {
    if (pool.empty()) return pool;
    std::vector<metrics::ObjectivePoint> pts;
    pts.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pts.push_back({pool[i].objectives.makespan, pool[i].objectives.cost, i});
    std::vector<Candidate> out;
    for (auto const& p : metrics::nondominated(pts)) out.push_back(std::move(pool[p.tag]));
    return out;
}

} // namespace

RiotResult riot_schedule(Workflow const& wf, RiotParams const& params, sim::Simulator const& simulator) {
    params.validate();
    auto const& catalog = simulator.catalog();
    std::size_t const calls_before = simulator.calls();

    Rng order_rng(derive_seed(params.seed, 0));
    auto const order = b_rank(wf, order_rng);

    std::vector<Clustering> clusterings;
    std::vector<Candidate> pool;
    for (std::size_t k = 0; k < params.eta_grid.size(); ++k) {
        Rng group_rng(derive_seed(params.seed, 2 * k + 1));
        Rng surrogate_rng(derive_seed(params.seed, 2 * k + 2));
        clusterings.push_back(task_group(wf, params.eta_grid[k], group_rng));
        auto const& clustering = clusterings.back();

        std::vector<Candidate> local;
        try {
            for (auto& m : surrogate_evaluate(clustering, wf, order, params, surrogate_rng, simulator))
                local.push_back({k, std::move(m.assignment), *m.objectives});
        } catch (Error const& e) {
            if (e.code() != ErrorCode::DegenerateAnchors) throw;
            // Single possible mapping: evaluate it directly.
            std::vector<catalog::TypeIndex> only(clustering.n_clusters, 0);
            auto eval = simulator(wf, clustering.task_to_cluster, only, order);
            local.push_back({k, std::move(only), {eval.makespan, eval.cost}});
        }
        // nondominated(A ∪ B) == nondominated(nondominated(A) ∪ nondominated(B)),
        // so filtering per clustering keeps memory bounded without changing S_B.
        for (auto& c : keep_nondominated(std::move(local))) pool.push_back(std::move(c));
    }

    auto best = keep_nondominated(std::move(pool));
    RiotResult result;
    result.best_set_size = best.size();

    std::set<std::pair<std::size_t, std::vector<catalog::TypeIndex>>> seen;
    std::vector<FrontierEntry> entries;
    for (auto const& c : best) {
        if (!seen.emplace(c.eta_index, c.mapping).second) continue;
        auto const& clustering = clusterings[c.eta_index];
        auto eval = simulator(wf, clustering.task_to_cluster, c.mapping, order);
        entries.push_back({make_schedule(clustering, c.mapping, order, catalog), eval.makespan, eval.cost,
                           params.eta_grid[c.eta_index], Provenance::Resimulated});
    }

    result.frontier.algorithm = "riot";
    result.frontier.seed = params.seed;
    result.frontier.entries = pareto_filter(std::move(entries));
    result.simulations = simulator.calls() - calls_before;
    result.frontier.simulations = result.simulations;
    return result;
}

} // namespace riot::sched
