#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "necklace/asymptotics.hpp"
#include "necklace/field.hpp"
#include "necklace/geometry.hpp"
#include "necklace/nonlocal.hpp"
#include "necklace/profile.hpp"
#include "necklace/reduction.hpp"

namespace necklace {

using json = nlohmann::json;

std::string version();

std::uint64_t fnv1a64(std::string_view bytes);
// 16 hex digits of the FNV-1a hash of the compact JSON dump (keys sorted by nlohmann::json)
std::string config_hash(const json& config);

// "necklace <version>", "command: ...", "config_hash: ..."
std::vector<std::string> metadata_lines(const std::string& command, const json& config);
json metadata_json(const std::string& command, const json& config);

// Shortest round-trip decimal form with '.' as separator.
std::string format_number(double v);
std::string csv_escape(const std::string& field);

// CSV table preceded by "# " metadata lines.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);
    void write(std::ostream& os, const std::vector<std::string>& metadata = {}) const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

void to_json(json& j, const DelaunayProfile& p);
void from_json(const json& j, DelaunayProfile& p);
void to_json(json& j, const ConformalChart& c);
void from_json(const json& j, ConformalChart& c);
void to_json(json& j, const SymmetricField& f);
void from_json(const json& j, SymmetricField& f);
void to_json(json& j, const SurfacePatch& p);
void to_json(json& j, const CoulombResult& r);
void to_json(json& j, const ExpansionReport& r);
void to_json(json& j, const MomentTable& t);
void to_json(json& j, const ReductionState& s);
void to_json(json& j, const MassMap& m);

}  // namespace necklace
