#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "riot/baselines.hpp"
#include "riot/error.hpp"
#include "riot/generate.hpp"

using namespace riot;
using riot::workflow::TaskIndex;

namespace {

workflow::Workflow chain4() {
    return workflow::validate({{"a", 100, {}, false}, {"b", 300, {}, false}, {"c", 50, {}, false}, {"d", 900, {}, false}},
                              {{"a", "b", 0}, {"b", "c", 0}, {"c", "d", 0}});
}

} // namespace

TEST_CASE("random search spends exactly its budget") {
    auto cat = catalog::default_catalog();
    auto wf = workflow::generate(workflow::Shape::Sipht, 30, 5);
    for (std::size_t budget : {1u, 2u, 17u, 300u}) {
        sim::Simulator s(cat);
        sched::Rng rng(budget);
        auto f = baselines::random_search(wf, {budget}, rng, s);
        CHECK(s.calls() == budget);
        CHECK(f.simulations == budget);
        CHECK(f.algorithm == "random");
        if (budget == 1) CHECK(f.entries.size() == 1);
        CHECK(f.entries.size() <= budget);
    }
    sim::Simulator s(cat);
    sched::Rng rng(0);
    try {
        baselines::random_search(wf, {0}, rng, s);
        FAIL("no throw");
    } catch (Error const& e) {
        CHECK(e.code() == ErrorCode::MalformedInput);
    }
}

TEST_CASE("random search is reproducible and well formed") {
    auto cat = catalog::default_catalog();
    auto wf = workflow::generate(workflow::Shape::Montage, 40, 2);
    sim::Simulator s(cat);
    sched::Rng r1(123), r2(123);
    auto a = baselines::random_search(wf, {200}, r1, s);
    auto b = baselines::random_search(wf, {200}, r2, s);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].schedule == b.entries[i].schedule);
        CHECK(a.entries[i].makespan == b.entries[i].makespan);
    }
    for (auto const& e : a.entries) {
        auto const& sch = e.schedule;
        CHECK(sch.cluster_to_type.size() <= 16);
        // Contiguous ids numbered by first appearance.
        std::size_t next = 0;
        for (auto c : sch.task_to_cluster) {
            if (c == next) ++next;
            CHECK(c < next);
        }
        CHECK(next == sch.cluster_to_type.size());
        auto re = sim::simulate(wf, sch, cat);
        CHECK(re.makespan == e.makespan);
        CHECK(re.cost == e.cost);
    }
}

TEST_CASE("heft on a chain uses the fastest VM throughout") {
    auto cat = catalog::default_catalog();
    auto wf = chain4();
    sim::Simulator s(cat);
    auto f = baselines::heft_schedule(wf, s);
    REQUIRE(f.entries.size() == 1);
    CHECK(s.calls() == 1);
    auto const& sch = f.entries[0].schedule;
    CHECK(sch.cluster_to_type == std::vector<std::string>{"m4.4xlarge"});

    // Exhaustive check over every type per task, one VM per type.
    std::vector<TaskIndex> order{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t code = 0; code < 8 * 8 * 8 * 8; ++code) {
        std::vector<std::size_t> t2c(4), types(8);
        for (std::size_t t = 0, c = code; t < 4; ++t, c /= 8) t2c[t] = c % 8;
        for (std::size_t v = 0; v < 8; ++v) types[v] = v;
        best = std::min(best, oracle::simulate(wf, t2c, types, order, cat).makespan);
    }
    CHECK(f.entries[0].makespan == best);
    CHECK(f.entries[0].makespan == doctest::Approx(1350.0 / 45.0));
}

TEST_CASE("heft puts a lone task on the fastest type") {
    auto cat = catalog::default_catalog();
    auto wf = workflow::validate({{"t", 90, {}, false}}, {});
    sim::Simulator s(cat);
    auto f = baselines::heft_schedule(wf, s);
    CHECK(f.entries[0].schedule.cluster_to_type == std::vector<std::string>{"m4.4xlarge"});
    CHECK(f.entries[0].makespan == 2.0);
    CHECK(f.algorithm == "heft");
}

TEST_CASE("heft spreads independent work across VMs") {
    auto cat = catalog::default_catalog();
    std::vector<workflow::Task> tasks{{"s", 0, {}, false}, {"e", 0, {}, false}};
    std::vector<workflow::DataEdge> edges;
    for (int i = 0; i < 6; ++i) {
        tasks.push_back({"w" + std::to_string(i), 900, {}, false});
        edges.push_back({"s", "w" + std::to_string(i), 0});
        edges.push_back({"w" + std::to_string(i), "e", 0});
    }
    auto wf = workflow::validate(tasks, edges);
    sim::Simulator s(cat);
    auto f = baselines::heft_schedule(wf, s);
    CHECK(f.entries[0].n_vms() > 1);
    CHECK(f.entries[0].makespan < 6 * 900 / 45.0);
}

TEST_CASE("both baselines produce valid schedules on fuzzed workflows") {
    auto cat = catalog::default_catalog();
    std::mt19937_64 gen(31);
    for (int i = 0; i < 500; ++i) {
        auto wf = i % 3 == 0 ? workflow::generate(workflow::all_shapes()[i % 7], 12 + gen() % 20, gen())
                             : oracle::random_dag(gen, 1 + gen() % 25);
        sim::Simulator s(cat);
        sched::Rng rng(i);
        for (auto const& f : {baselines::random_search(wf, {3}, rng, s), baselines::heft_schedule(wf, s)}) {
            for (auto const& e : f.entries) {
                auto re = sim::simulate(wf, e.schedule, cat);
                CHECK(re.makespan == e.makespan);
                CHECK(re.cost == e.cost);
            }
        }
    }
}
