#include <json.hpp>

#include "riot/error.hpp"
#include "riot/sim.hpp"

namespace riot::sim {

namespace {

using nlohmann::json;

json schedule_json(workflow::Workflow const& wf, Schedule const& schedule) {
    json mapping = json::object();
    for (TaskIndex t = 0; t < wf.size(); ++t) mapping[wf.task(t).id] = schedule.task_to_cluster.at(t);
    json order = json::array();
    for (auto t : schedule.secondary_order) order.push_back(wf.task(t).id);
    return {{"task_to_cluster", std::move(mapping)},
            {"cluster_to_type", schedule.cluster_to_type},
            {"secondary_order", std::move(order)}};
}

} // namespace

std::string to_json(workflow::Workflow const& wf, Schedule const& schedule) {
    return schedule_json(wf, schedule).dump(2) + "\n";
}

// Synthetic start/exit tasks may be omitted: they follow the cluster of their
// first real neighbour and sit at the ends of the secondary order.
Schedule schedule_from_json(workflow::Workflow const& wf, std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const& e) {
        throw Error(ErrorCode::MalformedInput, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "schedule is not an object");
    for (char const* key : {"task_to_cluster", "cluster_to_type", "secondary_order"})
        if (!doc.contains(key)) throw Error(ErrorCode::MalformedInput, std::string("schedule lacks \"") + key + "\"");

    std::size_t const n = wf.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    Schedule s;
    s.task_to_cluster.assign(n, unset);

    auto const& mapping = doc["task_to_cluster"];
    if (!mapping.is_object()) throw Error(ErrorCode::MalformedInput, "\"task_to_cluster\" is not an object");
    for (auto const& [id, cluster] : mapping.items()) {
        auto t = wf.find(id);
        if (!t) throw Error(ErrorCode::MalformedInput, "schedule references unknown task '" + id + "'");
        if (!cluster.is_number_unsigned())
            throw Error(ErrorCode::MalformedInput, "cluster of task '" + id + "' is not a non-negative integer");
        s.task_to_cluster[*t] = cluster.get<std::size_t>();
    }

    auto const& types = doc["cluster_to_type"];
    if (!types.is_array()) throw Error(ErrorCode::MalformedInput, "\"cluster_to_type\" is not an array");
    for (auto const& name : types) {
        if (!name.is_string()) throw Error(ErrorCode::MalformedInput, "VM type names must be strings");
        s.cluster_to_type.push_back(name.get<std::string>());
    }

    auto const& order = doc["secondary_order"];
    if (!order.is_array()) throw Error(ErrorCode::MalformedInput, "\"secondary_order\" is not an array");
    std::vector<char> listed(n, 0);
    for (auto const& id : order) {
        if (!id.is_string()) throw Error(ErrorCode::MalformedInput, "secondary order entries must be task ids");
        auto t = wf.find(id.get<std::string>());
        if (!t) throw Error(ErrorCode::MalformedInput, "secondary order references unknown task '" + id.get<std::string>() + "'");
        s.secondary_order.push_back(*t);
        listed[*t] = 1;
    }

    for (TaskIndex t = 0; t < n; ++t) {
        if (s.task_to_cluster[t] != unset) continue;
        auto const& task = wf.task(t);
        if (!task.synthetic)
            throw Error(ErrorCode::IncompleteSchedule, "task '" + task.id + "' has no cluster");
        auto neighbours = t == wf.start() ? wf.successors(t) : wf.predecessors(t);
        for (auto const& link : neighbours) {
            if (s.task_to_cluster[link.task] != unset) {
                s.task_to_cluster[t] = s.task_to_cluster[link.task];
                break;
            }
        }
        if (s.task_to_cluster[t] == unset) s.task_to_cluster[t] = 0;
    }
    if (wf.task(wf.start()).synthetic && !listed[wf.start()])
        s.secondary_order.insert(s.secondary_order.begin(), wf.start());
    if (wf.task(wf.exit()).synthetic && !listed[wf.exit()]) s.secondary_order.push_back(wf.exit());
    return s;
}

std::string to_json(workflow::Workflow const& wf, Schedule const& schedule, Evaluation const& eval) {
    json tasks = json::array();
    for (TaskIndex t = 0; t < wf.size(); ++t) {
        auto const& tt = eval.task_times[t];
        json jt = {{"id", wf.task(t).id},
                   {"cluster", schedule.task_to_cluster[t]},
                   {"st", tt.start},
                   {"ft", tt.finish},
                   {"dur", tt.duration},
                   {"filetime", tt.filetime}};
        if (wf.task(t).synthetic) jt["synthetic"] = true;
        tasks.push_back(std::move(jt));
    }
    json vms = json::array();
    for (std::size_t c = 0; c < eval.vm_spans.size(); ++c) {
        auto const& span = eval.vm_spans[c];
        vms.push_back({{"cluster", c},
                       {"type", schedule.cluster_to_type.at(c)},
                       {"used", span.used},
                       {"boot", span.boot},
                       {"shutdown", span.shutdown}});
    }
    return json{{"makespan", eval.makespan}, {"cost", eval.cost}, {"tasks", std::move(tasks)}, {"vm_spans", std::move(vms)}}
               .dump(2) +
           "\n";
}

} // namespace riot::sim
