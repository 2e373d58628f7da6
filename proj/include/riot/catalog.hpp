#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riot::catalog {

using TypeIndex = std::size_t;

inline constexpr double bytes_per_megabyte = 1.0e6;
inline constexpr double default_billing_seconds = 3600.0;

struct VmType {
    std::string name;
    double compute_units = 0.0;
    double bandwidth_mbps = 0.0; // MB/s
    double price_per_hour = 0.0; // dollars per billing period
};

/// VM types in price-ascending rank order (ties broken by name).
///
/// Type indices and ranks coincide: `types()[r]` is the type of rank r.
class Catalog {
public:
    /// Validates and ranks `types`. Throws DuplicateName or NonPositiveField.
    explicit Catalog(std::vector<VmType> types, double billing_seconds = default_billing_seconds);

    [[nodiscard]] std::span<VmType const> types() const noexcept { return types_; }
    [[nodiscard]] std::size_t size() const noexcept { return types_.size(); }
    [[nodiscard]] VmType const& type(TypeIndex i) const { return types_.at(i); }
    [[nodiscard]] double billing_seconds() const noexcept { return billing_seconds_; }

    [[nodiscard]] std::optional<TypeIndex> find(std::string_view name) const;
    /// Throws UnknownType.
    [[nodiscard]] TypeIndex index_of(std::string_view name) const;
    [[nodiscard]] std::size_t rank(std::string_view name) const { return index_of(name); }

    /// Index of the type with the most compute units (first on ties).
    [[nodiscard]] TypeIndex fastest() const noexcept;

    /// FNV-1a hash of the canonical JSON form, hex encoded.
    [[nodiscard]] std::string hash() const;

private:
    std::vector<VmType> types_;
    double billing_seconds_;
};

/// The eight on-demand EC2 types used throughout the experiments.
Catalog default_catalog();

/// JSON `{"billing_seconds":..,"types":[{name,compute_units,bandwidth_mbps,price_per_hour}]}`
/// or CSV with header `name,compute_units,bandwidth_mbps,price_per_hour`.
Catalog load_catalog(std::string_view text);

std::string to_json(Catalog const& catalog);

} // namespace riot::catalog
