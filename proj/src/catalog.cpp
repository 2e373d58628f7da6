#include "riot/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riot/error.hpp"

namespace riot::catalog {

namespace {

using nlohmann::json;

void require_positive(double v, std::string const& type, char const* field) {
    if (!std::isfinite(v) || v <= 0.0)
        throw Error(ErrorCode::NonPositiveField, "type '" + type + "': " + field + " must be positive");
}

double json_number(json const& obj, char const* key, std::string const& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number())
        throw Error(ErrorCode::MalformedInput, where + ": missing numeric \"" + key + "\"");
    return it->get<double>();
}

Catalog parse_json_catalog(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const& e) {
        throw Error(ErrorCode::MalformedInput, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("types") || !doc["types"].is_array())
        throw Error(ErrorCode::MalformedInput, "catalog needs a \"types\" array");
    double billing = default_billing_seconds;
    if (doc.contains("billing_seconds")) billing = json_number(doc, "billing_seconds", "catalog");

    std::vector<VmType> types;
    for (std::size_t i = 0; i < doc["types"].size(); ++i) {
        auto const& t = doc["types"][i];
        std::string const where = "types[" + std::to_string(i) + "]";
        if (!t.is_object() || !t.contains("name") || !t["name"].is_string())
            throw Error(ErrorCode::MalformedInput, where + ": missing \"name\"");
        types.push_back({t["name"].get<std::string>(), json_number(t, "compute_units", where),
                         json_number(t, "bandwidth_mbps", where), json_number(t, "price_per_hour", where)});
    }
    return Catalog(std::move(types), billing);
}

std::vector<std::string> split_csv_line(std::string const& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

Catalog parse_csv_catalog(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::string> header;
    std::vector<VmType> types;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        if (header.empty()) {
            header = cells;
            std::vector<std::string> const expected{"name", "compute_units", "bandwidth_mbps", "price_per_hour"};
            if (header != expected)
                throw Error(ErrorCode::MalformedInput,
                            "line 1: expected header name,compute_units,bandwidth_mbps,price_per_hour");
            continue;
        }
        if (cells.size() != 4)
            throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": expected 4 fields");
        VmType t;
        t.name = cells[0];
        try {
            t.compute_units = std::stod(cells[1]);
            t.bandwidth_mbps = std::stod(cells[2]);
            t.price_per_hour = std::stod(cells[3]);
        } catch (std::exception const&) {
            throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": non-numeric field");
        }
        types.push_back(std::move(t));
    }
    if (header.empty()) throw Error(ErrorCode::MalformedInput, "empty catalog");
    return Catalog(std::move(types));
}

} // namespace

Catalog::Catalog(std::vector<VmType> types, double billing_seconds)
    : types_(std::move(types)), billing_seconds_(billing_seconds) {
    if (types_.empty()) throw Error(ErrorCode::MalformedInput, "catalog has no types");
    if (!std::isfinite(billing_seconds_) || billing_seconds_ <= 0.0)
        throw Error(ErrorCode::NonPositiveField, "billing_seconds must be positive");
    std::set<std::string> names;
    for (auto const& t : types_) {
        if (t.name.empty()) throw Error(ErrorCode::MalformedInput, "type with empty name");
        if (!names.insert(t.name).second) throw Error(ErrorCode::DuplicateName, "duplicate type '" + t.name + "'");
        require_positive(t.compute_units, t.name, "compute_units");
        require_positive(t.bandwidth_mbps, t.name, "bandwidth_mbps");
        require_positive(t.price_per_hour, t.name, "price_per_hour");
    }
    std::sort(types_.begin(), types_.end(), [](VmType const& a, VmType const& b) {
        if (a.price_per_hour != b.price_per_hour) return a.price_per_hour < b.price_per_hour;
        return a.name < b.name;
    });
}

std::optional<TypeIndex> Catalog::find(std::string_view name) const {
    for (TypeIndex i = 0; i < types_.size(); ++i)
        if (types_[i].name == name) return i;
    return std::nullopt;
}

TypeIndex Catalog::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorCode::UnknownType, "unknown VM type '" + std::string(name) + "'");
}

TypeIndex Catalog::fastest() const noexcept {
    TypeIndex best = 0;
    for (TypeIndex i = 1; i < types_.size(); ++i)
        if (types_[i].compute_units > types_[best].compute_units) best = i;
    return best;
}

std::string Catalog::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(*this)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Catalog default_catalog() {
    return Catalog({
        {"m3.medium", 3.75, 85.2, 0.067},
        {"m4.large", 7.5, 35.2, 0.1},
        {"m3.large", 7.5, 85.2, 0.133},
        {"m4.xlarge", 15, 68, 0.2},
        {"m3.xlarge", 15, 131, 0.266},
        {"m4.2xlarge", 30, 131, 0.4},
        {"m3.2xlarge", 40, 131, 0.532},
        {"m4.4xlarge", 45, 181, 0.8},
    });
}

Catalog load_catalog(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_json_catalog(text);
    return parse_csv_catalog(text);
}

std::string to_json(Catalog const& catalog) {
    json types = json::array();
    for (auto const& t : catalog.types())
        types.push_back({{"name", t.name},
                         {"compute_units", t.compute_units},
                         {"bandwidth_mbps", t.bandwidth_mbps},
                         {"price_per_hour", t.price_per_hour}});
    return json{{"billing_seconds", catalog.billing_seconds()}, {"types", std::move(types)}}.dump();
}

} // namespace riot::catalog
