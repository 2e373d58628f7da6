#include "riot/frontier.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riot/error.hpp"

namespace riot {

namespace {

using nlohmann::json;

std::vector<std::string> split(std::string const& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(std::string const& text, std::size_t line_no) {
    double v = 0.0;
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": '" + text + "' is not a number");
    return v;
}

std::vector<metrics::ObjectivePoint> read_csv_points(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<metrics::ObjectivePoint> out;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (!header) {
            if (cells.size() < 2 || cells[0] != "makespan_s" || cells[1] != "cost_usd")
                throw Error(ErrorCode::MalformedInput, "line 1: expected header starting makespan_s,cost_usd");
            header = true;
            continue;
        }
        if (cells.size() < 2) throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": too few fields");
        out.push_back({parse_double(cells[0], line_no), parse_double(cells[1], line_no), out.size()});
    }
    if (!header) throw Error(ErrorCode::MalformedInput, "empty frontier file");
    return out;
}

std::vector<metrics::ObjectivePoint> read_json_points(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const& e) {
        throw Error(ErrorCode::MalformedInput, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
        throw Error(ErrorCode::MalformedInput, "frontier JSON needs a \"points\" array");
    std::vector<metrics::ObjectivePoint> out;
    for (auto const& p : doc["points"]) {
        if (!p.is_object() || !p.contains("makespan") || !p.contains("cost") || !p["makespan"].is_number() ||
            !p["cost"].is_number())
            throw Error(ErrorCode::MalformedInput, "frontier point lacks numeric makespan/cost");
        out.push_back({p["makespan"].get<double>(), p["cost"].get<double>(), out.size()});
    }
    return out;
}

} // namespace

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
    case Provenance::AnchorSimulated: return "anchor-simulated";
    case Provenance::SurrogateEstimated: return "surrogate-estimated";
    case Provenance::Resimulated: return "resimulated";
    case Provenance::Simulated: return "simulated";
    }
    return "unknown";
}

std::size_t FrontierEntry::n_vms() const {
    std::set<sim::ClusterId> used(schedule.task_to_cluster.begin(), schedule.task_to_cluster.end());
    return used.size();
}

std::vector<metrics::ObjectivePoint> Frontier::points() const {
    std::vector<metrics::ObjectivePoint> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) out.push_back({entries[i].makespan, entries[i].cost, i});
    return out;
}

std::vector<FrontierEntry> pareto_filter(std::vector<FrontierEntry> entries) {
    if (entries.empty()) return entries;
    std::vector<metrics::ObjectivePoint> pts;
    for (std::size_t i = 0; i < entries.size(); ++i) pts.push_back({entries[i].makespan, entries[i].cost, i});
    auto kept = metrics::nondominated(pts);
    std::stable_sort(kept.begin(), kept.end(), [](auto const& a, auto const& b) {
        if (a.makespan != b.makespan) return a.makespan < b.makespan;
        return a.cost < b.cost;
    });
    std::vector<FrontierEntry> out;
    out.reserve(kept.size());
    for (auto const& p : kept) out.push_back(std::move(entries[p.tag]));
    return out;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string to_csv(Frontier const& frontier) {
    std::string out = "makespan_s,cost_usd,n_vms,eta,provenance,mapping\n";
    for (auto const& e : frontier.entries) {
        out += format_number(e.makespan) + "," + format_number(e.cost) + "," + std::to_string(e.n_vms()) + ",";
        if (e.eta) out += format_number(*e.eta);
        out += ",";
        out += to_string(e.provenance);
        out += ",";
        for (std::size_t c = 0; c < e.schedule.cluster_to_type.size(); ++c) {
            if (c) out += ";";
            out += e.schedule.cluster_to_type[c];
        }
        out += "\n";
    }
    return out;
}

std::string to_json(Frontier const& frontier, workflow::Workflow const& wf, catalog::Catalog const& catalog) {
    json points = json::array();
    for (auto const& e : frontier.entries) {
        json p = {{"makespan", e.makespan},
                  {"cost", e.cost},
                  {"n_vms", e.n_vms()},
                  {"eta", e.eta ? json(*e.eta) : json(nullptr)},
                  {"provenance", to_string(e.provenance)},
                  {"schedule", json::parse(sim::to_json(wf, e.schedule))}};
        points.push_back(std::move(p));
    }
    return json{{"algorithm", frontier.algorithm},
                {"seed", frontier.seed},
                {"simulations", frontier.simulations},
                {"catalog_hash", catalog.hash()},
                {"version", tool_version},
                {"points", std::move(points)}}
               .dump(2) +
           "\n";
}

std::vector<metrics::ObjectivePoint> read_frontier_points(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return read_json_points(text);
    return read_csv_points(text);
}

} // namespace riot
