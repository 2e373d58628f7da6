#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "riot/error.hpp"
#include "riot/generate.hpp"
#include "riot/scheduler.hpp"
#include "riot/sim.hpp"

using namespace riot;
using riot::workflow::DataEdge;
using riot::workflow::Task;
using riot::workflow::TaskIndex;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (Error const& e) {
        return e.code();
    }
    FAIL("expected riot::Error");
    return ErrorCode::MalformedInput;
}

// Ts -> {1, 2}; 1 -> 3; 2 -> 4; {3, 4} -> 5 -> Te
workflow::Workflow fig2(double workload = 1.0) {
    std::vector<Task> tasks;
    for (auto id : {"Ts", "1", "2", "3", "4", "5", "Te"}) tasks.push_back({id, workload, {}, false});
    return workflow::validate(tasks, {{"Ts", "1", 0}, {"Ts", "2", 0}, {"1", "3", 0}, {"2", "4", 0}, {"3", "5", 0},
                                      {"4", "5", 0}, {"5", "Te", 0}});
}

sim::Schedule fig2_schedule(workflow::Workflow const& wf, std::string const& type) {
    sim::Schedule s;
    s.task_to_cluster.resize(wf.size());
    for (auto [id, c] : std::vector<std::pair<char const*, std::size_t>>{
             {"Ts", 0}, {"1", 0}, {"2", 0}, {"3", 1}, {"4", 1}, {"5", 2}, {"Te", 2}})
        s.task_to_cluster[wf.index_of(id)] = c;
    s.cluster_to_type = {type, type, type};
    for (auto id : {"Ts", "1", "2", "3", "4", "5", "Te"}) s.secondary_order.push_back(wf.index_of(id));
    return s;
}

catalog::Catalog unit_catalog() { return catalog::Catalog({{"unit", 1.0, 100.0, 1.0}}); }

} // namespace

TEST_CASE("task duration") {
    auto cat = catalog::default_catalog();
    auto const large = cat.index_of("m4.large");
    auto const medium = cat.index_of("m3.medium");
    auto const xl = cat.index_of("m3.xlarge");

    auto single = workflow::validate({{"a", 75.0, {}, false}}, {});
    std::vector<sim::ClusterId> t2c{0};
    std::vector<catalog::TypeIndex> types{large};
    auto d = sim::task_duration(single, 0, cat, t2c, types);
    CHECK(d.duration == 10.0);
    CHECK(d.filetime == 0.0);

    auto pair = workflow::validate({{"a", 0.0, {}, false}, {"b", 1.0, {}, false}}, {{"a", "b", 85.2e6}});
    std::vector<sim::ClusterId> split{0, 1};
    std::vector<catalog::TypeIndex> two{medium, xl};
    auto cross = sim::task_duration(pair, pair.index_of("a"), cat, split, two);
    CHECK(cross.filetime == 1.0);
    CHECK(cross.duration == 1.0);

    std::vector<sim::ClusterId> together{0, 0};
    auto local = sim::task_duration(pair, pair.index_of("a"), cat, together, two);
    CHECK(local.filetime == 0.0);
}

TEST_CASE("billing") {
    auto cat = catalog::default_catalog();
    std::vector<catalog::TypeIndex> t{cat.index_of("m4.large")};
    CHECK(sim::billed_cost(std::vector<sim::VmSpan>{{0, 3600, true}}, t, cat) == 0.1);
    CHECK(sim::billed_cost(std::vector<sim::VmSpan>{{0, 3601, true}}, t, cat) == 0.2);
    CHECK(sim::billed_cost(std::vector<sim::VmSpan>{{50, 50, true}}, t, cat) == 0.0);
    CHECK(sim::billed_cost(std::vector<sim::VmSpan>{{0, 9000, false}}, t, cat) == 0.0);
}

TEST_CASE("single task on m3.medium") {
    auto cat = catalog::default_catalog();
    auto wf = workflow::validate({{"a", 3.75, {}, false}}, {});
    sim::Schedule s{{0}, {"m3.medium"}, {0}};
    auto e = sim::simulate(wf, s, cat);
    CHECK(e.makespan == 1.0);
    CHECK(e.cost == 0.067);
}

TEST_CASE("chain on one VM serializes") {
    auto cat = unit_catalog();
    auto wf = workflow::validate({{"a", 1, {}, false}, {"b", 1, {}, false}}, {{"a", "b", 0}});
    auto e = sim::simulate(wf, {{0, 0}, {"unit"}, {0, 1}}, cat);
    CHECK(e.makespan == 2.0);
    CHECK(e.task_times[1].start == 1.0);
}

TEST_CASE("seven-task three-VM example") {
    auto cat = unit_catalog();
    auto wf = fig2();
    auto s = fig2_schedule(wf, "unit");
    auto e = sim::simulate(wf, s, cat);

    // Hand trace: VM a runs Ts, 1, 2 back to back; 3 waits for 1, 4 for 2
    // (and for 3 on the shared VM); 5 waits for both.
    std::map<std::string, std::pair<double, double>> expected{{"Ts", {0, 1}}, {"1", {1, 2}}, {"2", {2, 3}}, {"3", {2, 3}},
                                                              {"4", {3, 4}},  {"5", {4, 5}}, {"Te", {5, 6}}};
    for (auto const& [id, se] : expected) {
        CAPTURE(id);
        CHECK(e.task_times[wf.index_of(id)].start == se.first);
        CHECK(e.task_times[wf.index_of(id)].finish == se.second);
    }
    CHECK(e.makespan == 6.0);
    CHECK(e.makespan == e.task_times[wf.exit()].finish);
    CHECK(e.cost == 3.0);

    std::vector<std::size_t> types(3, 0);
    std::vector<TaskIndex> order(s.secondary_order.begin(), s.secondary_order.end());
    auto o = oracle::simulate(wf, s.task_to_cluster, types, order, cat);
    for (TaskIndex t = 0; t < wf.size(); ++t) {
        CHECK(o.start[t] == e.task_times[t].start);
        CHECK(o.finish[t] == e.task_times[t].finish);
    }
}

TEST_CASE("secondary order breaks ties on a VM") {
    auto cat = unit_catalog();
    auto wf = fig2();
    auto s = fig2_schedule(wf, "unit");
    // Put 2 before 1: now 2 runs first on VM a.
    std::swap(s.secondary_order[1], s.secondary_order[2]);
    auto e = sim::simulate(wf, s, cat);
    CHECK(e.task_times[wf.index_of("2")].start == 1.0);
    CHECK(e.task_times[wf.index_of("1")].start == 2.0);
}

TEST_CASE("zero-duration tasks finish at their start instant") {
    auto cat = unit_catalog();
    auto wf = workflow::validate({{"a", 0, {}, false}, {"b", 0, {}, false}, {"c", 2, {}, false}}, {{"a", "b", 0}, {"b", "c", 0}});
    auto e = sim::simulate(wf, {{0, 1, 0}, {"unit", "unit"}, {0, 1, 2}}, cat);
    CHECK(e.makespan == 2.0);
    CHECK(e.task_times[1].start == 0.0);
    CHECK(e.task_times[1].finish == 0.0);
    // VM 1 ran only a zero-length task: free.
    CHECK(e.cost == 1.0);
}

TEST_CASE("schedule validation") {
    auto cat = catalog::default_catalog();
    auto wf = fig2();
    auto good = fig2_schedule(wf, "m3.medium");

    auto short_map = good;
    short_map.task_to_cluster.pop_back();
    CHECK(code_of([&] { sim::simulate(wf, short_map, cat); }) == ErrorCode::IncompleteSchedule);

    auto no_type = good;
    no_type.cluster_to_type.pop_back();
    CHECK(code_of([&] { sim::simulate(wf, no_type, cat); }) == ErrorCode::IncompleteSchedule);

    auto bad_type = good;
    bad_type.cluster_to_type[1] = "x9.huge";
    CHECK(code_of([&] { sim::simulate(wf, bad_type, cat); }) == ErrorCode::UnknownType);

    auto backwards = good;
    std::reverse(backwards.secondary_order.begin(), backwards.secondary_order.end());
    CHECK(code_of([&] { sim::simulate(wf, backwards, cat); }) == ErrorCode::NonTopologicalOrder);

    auto repeated = good;
    repeated.secondary_order[1] = repeated.secondary_order[0];
    CHECK(code_of([&] { sim::simulate(wf, repeated, cat); }) == ErrorCode::IncompleteSchedule);
}

TEST_CASE("matches the event-trace oracle on random small workflows") {
    auto cat = catalog::default_catalog();
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 300; ++round) {
        std::size_t n = 1 + round % 8;
        auto wf = oracle::random_dag(rng, n);
        std::size_t k = 1 + rng() % 3;
        std::vector<std::size_t> t2c(wf.size()), types(k);
        for (auto& c : t2c) c = rng() % k;
        for (auto& t : types) t = rng() % cat.size();
        auto order = oracle::random_topological_order(wf, rng);
        auto e = sim::simulate_unchecked(wf, t2c, types, order, cat);
        auto o = oracle::simulate(wf, t2c, types, order, cat);
        CAPTURE(round);
        CHECK(e.makespan == o.makespan);
        CHECK(e.cost == o.cost);
        for (TaskIndex t = 0; t < wf.size(); ++t) CHECK(e.task_times[t].finish == o.finish[t]);
    }
}

TEST_CASE("one shared VM runs everything back to back") {
    auto cat = catalog::default_catalog();
    for (auto shape : workflow::all_shapes()) {
        auto wf = workflow::generate(shape, 40, 3);
        sched::Rng rng(1);
        auto order = sched::b_rank(wf, rng);
        std::vector<sim::ClusterId> t2c(wf.size(), 0);
        std::vector<catalog::TypeIndex> types{cat.index_of("m4.xlarge")};
        auto e = sim::simulate_unchecked(wf, t2c, types, order, cat);
        double total = 0.0;
        for (auto t : order) {
            CHECK(e.task_times[t].filetime == 0.0);
            CHECK(e.task_times[t].start == total);
            total += wf.task(t).workload / 15.0;
        }
        CHECK(e.makespan == total);
    }
}

TEST_CASE("determinism and the counting wrapper") {
    auto cat = catalog::default_catalog();
    auto wf = workflow::generate(workflow::Shape::CyberShake, 60, 4);
    sched::Rng rng(9);
    auto order = sched::b_rank(wf, rng);
    std::vector<sim::ClusterId> t2c(wf.size());
    for (std::size_t i = 0; i < t2c.size(); ++i) t2c[i] = i % 5;
    std::vector<catalog::TypeIndex> types{0, 3, 7, 2, 5};
    sim::Simulator s(cat);
    auto a = s(wf, t2c, types, order);
    auto b = s(wf, t2c, types, order);
    CHECK(s.calls() == 2);
    CHECK(a.makespan == b.makespan);
    CHECK(a.cost == b.cost);
    s.reset_calls();
    CHECK(s.calls() == 0);
}

TEST_CASE("faster hardware never slows a single-VM schedule") {
    // With one VM the order is fixed, so only durations change.
    auto cat = catalog::default_catalog();
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        auto wf = oracle::random_dag(rng, 2 + rng() % 19);
        auto order = oracle::random_topological_order(wf, rng);
        std::vector<std::size_t> t2c(wf.size(), 0);
        double prev = std::numeric_limits<double>::infinity();
        for (auto type : {"m3.medium", "m3.large", "m3.xlarge", "m3.2xlarge", "m4.4xlarge"}) {
            std::vector<std::size_t> types{cat.index_of(type)};
            auto m = sim::simulate_unchecked(wf, t2c, types, order, cat).makespan;
            CHECK(m <= prev);
            prev = m;
        }
    }
}

TEST_CASE("upgrading one VM can delay the exit task") {
    // List-scheduling anomaly. VM A holds p (earlier in the order, waits on
    // s) and q (waits on r); x follows p on VM B and dominates the makespan.
    // A faster VM for r makes q ready first, q grabs A, and p (hence x) slips.
    catalog::Catalog cat({{"slow", 1.0, 1000.0, 0.1}, {"fast", 4.0, 1000.0, 0.2}});
    auto wf = workflow::validate({{"src", 0, {}, false},
                                  {"s", 4, {}, false},
                                  {"r", 8, {}, false},
                                  {"p", 10, {}, false},
                                  {"q", 10, {}, false},
                                  {"x", 20, {}, false},
                                  {"end", 0, {}, false}},
                                 {{"src", "s", 0}, {"src", "r", 0}, {"s", "p", 0}, {"r", "q", 0}, {"p", "x", 0},
                                  {"x", "end", 0}, {"q", "end", 0}});
    std::vector<std::size_t> t2c(wf.size());
    for (auto [id, c] : std::vector<std::pair<char const*, std::size_t>>{
             {"src", 0}, {"s", 1}, {"r", 2}, {"p", 0}, {"q", 0}, {"x", 1}, {"end", 0}})
        t2c[wf.index_of(id)] = c;
    std::vector<TaskIndex> order;
    for (auto id : {"src", "s", "r", "p", "q", "x", "end"}) order.push_back(wf.index_of(id));

    std::vector<std::size_t> slow_r{0, 0, 0}, fast_r{0, 0, 1};
    // slow r: s 0..4, p 4..14, x 14..34, r 0..8, q 14..24
    auto before = sim::simulate_unchecked(wf, t2c, slow_r, order, cat);
    // fast r: r 0..2, q 2..12, p 12..22, x 22..42
    auto after = sim::simulate_unchecked(wf, t2c, fast_r, order, cat);
    CHECK(before.makespan == 34.0);
    CHECK(after.makespan == 42.0);
    CHECK(oracle::simulate(wf, t2c, slow_r, order, cat).makespan == 34.0);
    CHECK(oracle::simulate(wf, t2c, fast_r, order, cat).makespan == 42.0);
}

TEST_CASE("schedule JSON") {
    auto cat = catalog::default_catalog();
    auto wf = fig2(7.5);
    auto s = fig2_schedule(wf, "m4.large");
    s.cluster_to_type[2] = "m3.medium";
    auto text = sim::to_json(wf, s);
    CHECK(sim::schedule_from_json(wf, text) == s);

    auto eval_text = sim::to_json(wf, s, sim::simulate(wf, s, cat));
    auto doc = nlohmann::json::parse(eval_text);
    CHECK(doc["makespan"].get<double>() == sim::simulate(wf, s, cat).makespan);
    CHECK(doc["tasks"].size() == wf.size());
    CHECK(doc["vm_spans"].size() == 3);

    auto missing = nlohmann::json::parse(text);
    missing["task_to_cluster"].erase("3");
    CHECK(code_of([&] { sim::schedule_from_json(wf, missing.dump()); }) == ErrorCode::IncompleteSchedule);
    auto unknown = nlohmann::json::parse(text);
    unknown["task_to_cluster"]["ghost"] = 0;
    CHECK(code_of([&] { sim::schedule_from_json(wf, unknown.dump()); }) == ErrorCode::MalformedInput);
    CHECK(code_of([&] { sim::schedule_from_json(wf, "[]"); }) == ErrorCode::MalformedInput);
}

TEST_CASE("synthetic tasks may be left out of schedule JSON") {
    auto cat = catalog::default_catalog();
    auto wf = workflow::validate({{"a", 10, {}, false}, {"b", 20, {}, false}}, {});
    auto s = sim::schedule_from_json(wf, R"({"task_to_cluster":{"a":0,"b":1},
                                            "cluster_to_type":["m3.medium","m4.large"],
                                            "secondary_order":["b","a"]})");
    CHECK(s.secondary_order.front() == wf.start());
    CHECK(s.secondary_order.back() == wf.exit());
    auto e = sim::simulate(wf, s, cat);
    CHECK(e.makespan == std::max(10 / 3.75, 20 / 7.5));
}
