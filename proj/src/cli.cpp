#include "riot/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "riot/baselines.hpp"
#include "riot/catalog.hpp"
#include "riot/error.hpp"
#include "riot/frontier.hpp"
#include "riot/generate.hpp"
#include "riot/metrics.hpp"
#include "riot/scheduler.hpp"
#include "riot/sim.hpp"
#include "riot/workflow.hpp"

namespace riot::cli {

namespace {

using nlohmann::json;

// File-system problems are user input errors, like parse failures.
struct InputFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFileError("no such file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(std::string const& path, std::string const& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputFileError("cannot write: " + path);
    out << content;
}

workflow::Workflow load_workflow(std::string const& path) {
    auto text = read_file(path);
    auto ext = std::filesystem::path(path).extension().string();
    auto first = text.find_first_not_of(" \t\r\n");
    bool const xml = ext == ".dax" || ext == ".xml" || (first != std::string::npos && text[first] == '<');
    return xml ? workflow::parse_dax(text) : workflow::parse_json(text);
}

catalog::Catalog resolve_catalog(std::string const& flag) {
    if (!flag.empty()) return catalog::load_catalog(read_file(flag));
    if (char const* env = std::getenv("RIOT_CATALOG"); env != nullptr && *env != '\0')
        return catalog::load_catalog(read_file(env));
    return catalog::default_catalog();
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> const& flag, std::ostream& err) {
    if (flag) return *flag;
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed: " << seed << "\n";
    return seed;
}

std::vector<double> parse_eta_grid(std::string const& text) {
    std::vector<double> grid;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (std::exception const&) {
            throw Error(ErrorCode::MalformedInput, "--eta-grid entry '" + cell + "' is not a number");
        }
    }
    return grid;
}

struct GenOptions {
    std::string shape;
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct ScheduleOptions {
    std::string workflow;
    std::string algo = "riot";
    std::optional<std::uint64_t> seed;
    std::string catalog;
    std::string eta_grid;
    std::size_t n_random = 500;
    std::size_t n_anchor = 30;
    double alpha = 1.0;
    std::size_t budget = 760;
    std::string out = "frontier";
    std::string format;
};

struct SimulateOptions {
    std::string workflow;
    std::string schedule;
    std::string catalog;
    std::string out = "evaluation.json";
};

struct CompareOptions {
    std::vector<std::string> inputs;
    std::string out = "comparison.json";
    std::string igd_direction = "reference";
};

int cmd_gen(GenOptions const& o, std::ostream& out, std::ostream& err) {
    auto const seed = resolve_seed(o.seed, err);
    auto wf = workflow::generate(workflow::parse_shape(o.shape), o.n, seed);
    auto text = workflow::to_json(wf);
    if (o.out.empty() || o.out == "-") {
        out << text;
    } else {
        write_file(o.out, text);
        out << "wrote " << o.out << " (" << wf.real_task_count() << " tasks, seed " << seed << ")\n";
    }
    return Success;
}

int cmd_schedule(ScheduleOptions const& o, std::ostream& out, std::ostream& err) {
    auto const wf = load_workflow(o.workflow);
    auto const catalog = resolve_catalog(o.catalog);
    // heft draws no random numbers, so an absent seed stays 0 and is not announced
    auto const seed = o.algo == "heft" ? o.seed.value_or(0) : resolve_seed(o.seed, err);
    sim::Simulator simulator(catalog);

    auto const started = std::chrono::steady_clock::now();
    Frontier frontier;
    std::optional<std::size_t> best_set;
    if (o.algo == "riot") {
        sched::RiotParams params;
        params.n_random = o.n_random;
        params.n_anchor_extra = o.n_anchor;
        params.distance_alpha = o.alpha;
        params.seed = seed;
        if (!o.eta_grid.empty()) params.eta_grid = parse_eta_grid(o.eta_grid);
        auto result = sched::riot_schedule(wf, params, simulator);
        best_set = result.best_set_size;
        frontier = std::move(result.frontier);
    } else if (o.algo == "random") {
        sched::Rng rng(seed);
        frontier = baselines::random_search(wf, {o.budget}, rng, simulator);
    } else if (o.algo == "heft") {
        frontier = baselines::heft_schedule(wf, simulator);
    } else {
        throw Error(ErrorCode::MalformedInput, "unknown algorithm '" + o.algo + "'");
    }
    frontier.seed = seed;
    double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (o.format.empty() || o.format == "csv") write_file(o.out + ".csv", to_csv(frontier));
    if (o.format.empty() || o.format == "json") write_file(o.out + ".json", to_json(frontier, wf, catalog));

    double best_makespan = frontier.entries.front().makespan;
    double best_cost = frontier.entries.front().cost;
    for (auto const& e : frontier.entries) {
        best_makespan = std::min(best_makespan, e.makespan);
        best_cost = std::min(best_cost, e.cost);
    }
    out << "algo=" << frontier.algorithm << " points=" << frontier.entries.size()
        << " best_makespan=" << format_number(best_makespan) << " best_cost=" << format_number(best_cost)
        << " simulations=" << frontier.simulations;
    if (best_set) out << " best_set=" << *best_set;
    out << " wall_time=" << std::fixed << std::setprecision(3) << seconds << "s" << std::defaultfloat
        << " seed=" << seed << "\n";
    return Success;
}

int cmd_simulate(SimulateOptions const& o, std::ostream& out, std::ostream&) {
    auto const wf = load_workflow(o.workflow);
    auto const catalog = resolve_catalog(o.catalog);
    auto const schedule = sim::schedule_from_json(wf, read_file(o.schedule));
    auto const eval = sim::simulate(wf, schedule, catalog);
    auto doc = json::parse(sim::to_json(wf, schedule, eval));
    doc["catalog_hash"] = catalog.hash();
    doc["version"] = tool_version;
    write_file(o.out, doc.dump(2) + "\n");
    out << "makespan=" << format_number(eval.makespan) << " cost=" << format_number(eval.cost) << "\n";
    return Success;
}

int cmd_compare(CompareOptions const& o, std::ostream& out, std::ostream&) {
    metrics::IgdDirection direction;
    if (o.igd_direction == "reference") {
        direction = metrics::IgdDirection::ReferenceToObtained;
    } else if (o.igd_direction == "obtained") {
        direction = metrics::IgdDirection::ObtainedToReference;
    } else {
        throw Error(ErrorCode::MalformedInput, "--igd-direction must be 'reference' or 'obtained'");
    }

    std::vector<std::vector<metrics::ObjectivePoint>> fronts;
    std::vector<json> provenance;
    for (auto const& path : o.inputs) {
        auto text = read_file(path);
        try {
            fronts.push_back(read_frontier_points(text));
        } catch (Error const& e) {
            throw Error(e.code(), path + ": " + e.what());
        }
        if (fronts.back().empty()) throw Error(ErrorCode::MalformedInput, path + ": frontier has no points");
        json meta = {{"seed", nullptr}, {"catalog_hash", nullptr}, {"algorithm", nullptr}};
        if (auto doc = json::parse(text, nullptr, false); doc.is_object()) {
            for (auto const* key : {"seed", "catalog_hash", "algorithm"})
                if (doc.contains(key)) meta[key] = doc[key];
        }
        provenance.push_back(std::move(meta));
    }

    auto const cmp = metrics::compare(fronts, direction);

    out << std::left << std::setw(32) << "input" << std::right << std::setw(8) << "points" << std::setw(14)
        << "hypervolume" << std::setw(12) << "igd" << std::setw(12) << "spread" << "\n";
    json inputs = json::array();
    for (std::size_t i = 0; i < o.inputs.size(); ++i) {
        auto const& s = cmp.scores[i];
        std::ostringstream spread;
        if (s.spread) {
            spread << std::fixed << std::setprecision(4) << *s.spread;
        } else {
            spread << "n.a.";
        }
        out << std::left << std::setw(32) << o.inputs[i] << std::right << std::setw(8) << s.n_points << std::fixed
            << std::setprecision(4) << std::setw(14) << s.hypervolume << std::setw(12) << s.igd << std::setw(12)
            << spread.str() << std::defaultfloat << "\n";
        json entry = {{"path", o.inputs[i]},
                      {"n_points", s.n_points},
                      {"hypervolume", s.hypervolume},
                      {"igd", s.igd},
                      {"spread", s.spread ? json(*s.spread) : json(nullptr)}};
        entry.update(provenance[i]);
        inputs.push_back(std::move(entry));
    }

    json report = {
        {"version", tool_version},
        {"igd_direction", o.igd_direction == "reference" ? "reference-to-obtained" : "obtained-to-reference"},
        {"bounds",
         {{"makespan", {cmp.bounds.min_makespan, cmp.bounds.max_makespan}},
          {"cost", {cmp.bounds.min_cost, cmp.bounds.max_cost}},
          {"padded_makespan", cmp.padded_makespan},
          {"padded_cost", cmp.padded_cost}}},
        {"reference_size", cmp.reference.size()},
        {"inputs", std::move(inputs)},
    };
    write_file(o.out, report.dump(2) + "\n");
    return Success;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-objective cloud workflow scheduler", "riot"};
    app.set_version_flag("--version", std::string(tool_version));
    app.set_config("--config", "", "TOML/INI file with default option values");
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic workflow");
    gen_cmd->add_option("--shape", gen.shape, "montage-like, epigenomics-like, inspiral-like, cybershake-like, "
                                              "sipht-like, pipeline or fork-join")
        ->required();
    gen_cmd->add_option("-n,--tasks", gen.n, "Number of tasks")->required();
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--out", gen.out, "Output path (stdout when omitted)");

    ScheduleOptions sch;
    auto* sch_cmd = app.add_subcommand("schedule", "Compute a makespan/cost frontier");
    sch_cmd->add_option("workflow", sch.workflow, "Workflow file (native JSON or DAX)")->required();
    sch_cmd->add_option("--algo", sch.algo, "riot, random or heft")->check(CLI::IsMember({"riot", "random", "heft"}));
    sch_cmd->add_option("--seed", sch.seed, "Random seed");
    sch_cmd->add_option("--catalog", sch.catalog, "VM catalog file (default: $RIOT_CATALOG, then built-in)");
    sch_cmd->add_option("--eta-grid", sch.eta_grid, "Comma-separated eta values");
    sch_cmd->add_option("--n-random", sch.n_random, "Random mappings scored per clustering");
    sch_cmd->add_option("--n-anchor", sch.n_anchor, "Extra random anchors per clustering");
    sch_cmd->add_option("--alpha", sch.alpha, "Exponent of the mapping distance");
    sch_cmd->add_option("--budget", sch.budget, "Simulation budget for --algo random");
    sch_cmd->add_option("--out", sch.out, "Output path stem; writes <stem>.csv and <stem>.json");
    sch_cmd->add_option("--format", sch.format, "Write only csv or json")->check(CLI::IsMember({"csv", "json"}));

    SimulateOptions simo;
    auto* sim_cmd = app.add_subcommand("simulate", "Evaluate one schedule");
    sim_cmd->add_option("workflow", simo.workflow, "Workflow file")->required();
    sim_cmd->add_option("schedule", simo.schedule, "Schedule JSON")->required();
    sim_cmd->add_option("--catalog", simo.catalog, "VM catalog file");
    sim_cmd->add_option("--out", simo.out, "Evaluation JSON path");

    CompareOptions cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "Score frontiers against their union");
    cmp_cmd->add_option("frontiers", cmp.inputs, "Frontier files (CSV or JSON)")->required()->expected(2, -1);
    cmp_cmd->add_option("--out", cmp.out, "Report JSON path");
    cmp_cmd->add_option("--igd-direction", cmp.igd_direction, "reference (standard IGD) or obtained");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Success : InputError;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out, err);
        if (*sch_cmd) return cmd_schedule(sch, out, err);
        if (*sim_cmd) return cmd_simulate(simo, out, err);
        if (*cmp_cmd) return cmd_compare(cmp, out, err);
    } catch (InputFileError const& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (Error const& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (std::exception const& e) {
        err << "internal error: " << e.what() << "\n";
        return InternalFailure;
    }
    return InternalFailure;
}

} // namespace riot::cli
