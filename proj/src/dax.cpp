// DAX-subset ingestion: <adag> holding <job runtime=...> with <uses> children,
// and <child ref><parent ref/></child> dependency blocks.

#include <map>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "riot/error.hpp"
#include "riot/workflow.hpp"

namespace riot::workflow {

namespace {

namespace pt = boost::property_tree;

constexpr char const* attr_key = "<xmlattr>";
constexpr char const* comment_key = "<xmlcomment>";

bool is_meta(std::string const& key) { return key == attr_key || key == comment_key; }

std::optional<std::string> attribute(pt::ptree const& node, char const* name) {
    if (auto attrs = node.get_child_optional(attr_key)) {
        if (auto v = attrs->get_optional<std::string>(name)) return *v;
    }
    return std::nullopt;
}

std::string required_attribute(pt::ptree const& node, char const* name, std::string const& where) {
    if (auto v = attribute(node, name)) return *v;
    throw Error(ErrorCode::MalformedInput, where + " lacks attribute '" + name + "'");
}

double parse_number(std::string const& text, std::string const& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (std::exception const&) {
        throw Error(ErrorCode::MalformedInput, where + ": '" + text + "' is not a number");
    }
}

struct FileUse {
    std::vector<std::size_t> writers;
    std::vector<std::size_t> readers;
    double bytes = 0.0;
};

} // namespace

Workflow parse_dax(std::string_view xml_text) {
    pt::ptree doc;
    try {
        std::istringstream in{std::string(xml_text)};
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (pt::xml_parser_error const& e) {
        throw Error(ErrorCode::MalformedInput, "line " + std::to_string(e.line()) + ": " + e.message());
    }

    pt::ptree const* adag = nullptr;
    for (auto const& [key, node] : doc) {
        if (key == comment_key) continue;
        if (key != "adag") throw Error(ErrorCode::UnsupportedFeature, "root element <" + key + ">");
        adag = &node;
    }
    if (adag == nullptr) throw Error(ErrorCode::MalformedInput, "no <adag> root element");

    std::vector<Task> tasks;
    std::map<std::string, std::size_t> job_index;
    std::map<std::string, FileUse> files;
    std::map<std::pair<std::size_t, std::size_t>, double> edge_bytes;
    std::vector<std::pair<std::string, std::string>> declared; // parent, child

    for (auto const& [key, node] : *adag) {
        if (is_meta(key)) continue;
        if (key == "job") {
            std::string const where = "job #" + std::to_string(tasks.size() + 1);
            Task task;
            task.id = required_attribute(node, "id", where);
            task.workload = parse_number(required_attribute(node, "runtime", "job '" + task.id + "'"),
                                         "job '" + task.id + "' runtime");
            task.label = attribute(node, "name");
            std::size_t const idx = tasks.size();
            if (!job_index.emplace(task.id, idx).second)
                throw Error(ErrorCode::MalformedInput, "duplicate job id '" + task.id + "'");

            for (auto const& [ukey, use] : node) {
                if (is_meta(ukey)) continue;
                if (ukey != "uses") throw Error(ErrorCode::UnsupportedFeature, "<" + ukey + "> inside <job>");
                std::string const uwhere = "uses in job '" + task.id + "'";
                auto file = attribute(use, "file");
                if (!file) file = attribute(use, "name");
                if (!file) throw Error(ErrorCode::MalformedInput, uwhere + " lacks attribute 'file'");
                auto link = required_attribute(use, "link", uwhere);
                double size = 0.0;
                if (auto s = attribute(use, "size")) size = parse_number(*s, uwhere + " size");
                if (size < 0.0) throw Error(ErrorCode::MalformedInput, uwhere + ": negative size");

                auto& fu = files[*file];
                fu.bytes = std::max(fu.bytes, size);
                if (link == "input") {
                    fu.readers.push_back(idx);
                } else if (link == "output") {
                    fu.writers.push_back(idx);
                } else {
                    throw Error(ErrorCode::UnsupportedFeature, "uses link='" + link + "'");
                }
            }
            tasks.push_back(std::move(task));
        } else if (key == "child") {
            auto child = required_attribute(node, "ref", "<child>");
            for (auto const& [pkey, parent] : node) {
                if (is_meta(pkey)) continue;
                if (pkey != "parent") throw Error(ErrorCode::UnsupportedFeature, "<" + pkey + "> inside <child>");
                declared.emplace_back(required_attribute(parent, "ref", "<parent>"), child);
            }
        } else {
            throw Error(ErrorCode::UnsupportedFeature, "<" + key + "> element");
        }
    }

    // Each reader receives the whole file from each writer.
    for (auto const& [name, fu] : files) {
        for (auto w : fu.writers)
            for (auto r : fu.readers)
                if (w != r) edge_bytes[{w, r}] += fu.bytes;
    }

    std::vector<DataEdge> edges;
    for (auto const& [parent, child] : declared) {
        auto p = job_index.find(parent);
        auto c = job_index.find(child);
        if (p == job_index.end() || c == job_index.end()) {
            // Let validate() name the missing id.
            edges.push_back({parent, child, 0.0});
            continue;
        }
        edge_bytes.try_emplace({p->second, c->second}, 0.0);
    }
    for (auto const& [key, bytes] : edge_bytes)
        edges.push_back({tasks[key.first].id, tasks[key.second].id, bytes});

    return validate(std::move(tasks), std::move(edges));
}

} // namespace riot::workflow
