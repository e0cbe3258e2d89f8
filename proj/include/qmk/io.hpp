#pragma once

// JSON schemas for measures, point sets, grid functions and reports.

#include <string>
#include <string_view>

#include <json.hpp>

#include "qmk/discrepancy.hpp"
#include "qmk/grid_function.hpp"
#include "qmk/integrate.hpp"
#include "qmk/measures.hpp"
#include "qmk/transforms.hpp"

namespace qmk::io {

using nlohmann::json;

/// Parses JSON text; syntax errors become ValidationError naming `source` with line and column.
json parse(std::string_view text, const std::string& source);
json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Measure measure_from_json(const json& j);
json measure_to_json(const Measure& m);

PointSet points_from_json(const json& j);
json points_to_json(const PointSet& ps);
std::string points_to_csv(const PointSet& ps);

GridFunction grid_function_from_json(const json& j);
json grid_function_to_json(const GridFunction& f);

json atoms_to_json(const DiscreteSignedMeasure& nu);
json discrepancy_to_json(const DiscrepancyResult& r);
json certificate_to_json(const KHCertificate& c);

std::string interp_name(Interp interp);

}  // namespace qmk::io
