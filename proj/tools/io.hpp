#pragma once

#include "wulffkit/measures.hpp"
#include "wulffkit/report.hpp"

#include <json.hpp>

#include <string>

namespace wulffkit::io {

using nlohmann::json;

/// Measure files: {"v": 1, "dim": n, "points": [[...], ...], "weights": [...], "f": [...]}.
/// Every schema problem is reported as SchemaError naming the field and index.
measures::MeasurePair measure_from_json(const json& doc);
json measure_to_json(const measures::MeasurePair& pair);

measures::MeasurePair load_measure(const std::string& path);
void save_measure(const std::string& path, const measures::MeasurePair& pair);

/// {"name", "lhs", "rhs", "gap", "equality", "eq_tol", "meta": {...}}.
json report_to_json(const InequalityReport& r);
InequalityReport report_from_json(const json& doc);

/// Doubles as text with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace wulffkit::io
