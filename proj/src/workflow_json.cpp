#include <cmath>
#include <cstdint>
#include <limits>

#include <json.hpp>

#include "riot/error.hpp"
#include "riot/workflow.hpp"

namespace riot::workflow {

namespace {

using nlohmann::json;

double number_field(json const& obj, char const* key, std::string const& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::MalformedInput, where + ": missing \"" + key + "\"");
    if (!it->is_number()) throw Error(ErrorCode::MalformedInput, where + ": \"" + key + "\" is not a number");
    return it->get<double>();
}

std::string string_field(json const& obj, char const* key, std::string const& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::MalformedInput, where + ": missing \"" + key + "\"");
    if (!it->is_string()) throw Error(ErrorCode::MalformedInput, where + ": \"" + key + "\" is not a string");
    return it->get<std::string>();
}

json bytes_value(double bytes) {
    if (bytes == std::floor(bytes) && bytes <= static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2))
        return static_cast<std::uint64_t>(bytes);
    return bytes;
}

} // namespace

Workflow parse_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const& e) {
        throw Error(ErrorCode::MalformedInput, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "top level is not an object");

    auto tasks_it = doc.find("tasks");
    if (tasks_it == doc.end() || !tasks_it->is_array())
        throw Error(ErrorCode::MalformedInput, "missing \"tasks\" array");

    std::vector<Task> tasks;
    tasks.reserve(tasks_it->size());
    for (std::size_t i = 0; i < tasks_it->size(); ++i) {
        auto const& t = (*tasks_it)[i];
        std::string const where = "tasks[" + std::to_string(i) + "]";
        if (!t.is_object()) throw Error(ErrorCode::MalformedInput, where + " is not an object");
        Task task;
        task.id = string_field(t, "id", where);
        task.workload = number_field(t, "workload", where);
        if (t.contains("label")) task.label = string_field(t, "label", where);
        tasks.push_back(std::move(task));
    }

    std::vector<DataEdge> edges;
    if (auto edges_it = doc.find("edges"); edges_it != doc.end()) {
        if (!edges_it->is_array()) throw Error(ErrorCode::MalformedInput, "\"edges\" is not an array");
        for (std::size_t i = 0; i < edges_it->size(); ++i) {
            auto const& e = (*edges_it)[i];
            std::string const where = "edges[" + std::to_string(i) + "]";
            if (!e.is_object()) throw Error(ErrorCode::MalformedInput, where + " is not an object");
            edges.push_back({string_field(e, "from", where), string_field(e, "to", where),
                             number_field(e, "bytes", where)});
        }
    }

    return validate(std::move(tasks), std::move(edges));
}

std::string to_json(Workflow const& wf) {
    json tasks = json::array();
    for (auto const& t : wf.tasks()) {
        if (t.synthetic) continue;
        json jt = {{"id", t.id}, {"workload", t.workload}};
        if (t.label) jt["label"] = *t.label;
        tasks.push_back(std::move(jt));
    }
    json edges = json::array();
    for (auto const& e : wf.edges()) {
        if (wf.task(wf.index_of(e.from)).synthetic || wf.task(wf.index_of(e.to)).synthetic) continue;
        edges.push_back({{"from", e.from}, {"to", e.to}, {"bytes", bytes_value(e.bytes)}});
    }
    return json{{"tasks", std::move(tasks)}, {"edges", std::move(edges)}}.dump(2) + "\n";
}

} // namespace riot::workflow
