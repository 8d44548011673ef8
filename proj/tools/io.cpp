#include "io.hpp"

#include "wulffkit/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wulffkit::io {
namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(Errc::SchemaError, msg); }

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) schema(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(where + ": not finite");
  return x;
}

std::vector<double> positive_list(const json& doc, const char* key, std::size_t expected) {
  if (!doc.contains(key) || !doc[key].is_array()) schema(std::string("missing array field '") + key + "'");
  const auto& arr = doc[key];
  if (arr.size() != expected)
    schema(std::string("field '") + key + "' has " + std::to_string(arr.size()) + " entries, expected " +
           std::to_string(expected));
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    const double x = number_at(arr[i], where);
    if (!(x > 0.0)) schema(where + ": must be positive, got " + format_double(x));
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

measures::MeasurePair measure_from_json(const json& doc) {
  if (!doc.is_object()) schema("measure document must be a JSON object");
  if (!doc.contains("v") || doc["v"] != 1) schema("field 'v': unsupported or missing schema version (expected 1)");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) schema("field 'dim': expected an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 1 || dim > kMaxDim) schema("field 'dim': out of range [1, " + std::to_string(kMaxDim) + "]");
  if (!doc.contains("points") || !doc["points"].is_array() || doc["points"].empty())
    schema("field 'points': expected a non-empty array");

  PointList points;
  const auto& pts = doc["points"];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!pts[i].is_array() || pts[i].size() != static_cast<std::size_t>(dim))
      schema(where + ": expected " + std::to_string(dim) + " coordinates");
    Vec p(dim);
    for (int k = 0; k < dim; ++k)
      p(k) = number_at(pts[i][static_cast<std::size_t>(k)], where + "[" + std::to_string(k) + "]");
    if (std::abs(p.norm() - 1.0) > 1e-12)
      schema(where + ": unit norm violated (|u| = " + format_double(p.norm()) + ")");
    points.push_back(p);
  }
  auto weights = positive_list(doc, "weights", points.size());
  auto f = positive_list(doc, "f", points.size());
  try {
    return {measures::DiscreteMeasure(dim, std::move(points), std::move(weights)), measures::WeightFn(std::move(f))};
  } catch (const Error& e) {
    schema(e.what());
  }
}

json measure_to_json(const measures::MeasurePair& pair) {
  json doc;
  doc["v"] = 1;
  doc["dim"] = pair.measure.dim();
  doc["points"] = json::array();
  for (const auto& p : pair.measure.points()) doc["points"].push_back(std::vector<double>(p.data(), p.data() + p.size()));
  doc["weights"] = pair.measure.weights();
  doc["f"] = pair.f.values();
  return doc;
}

measures::MeasurePair load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::SchemaError, "cannot open measure file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, path + ": " + e.what());
  }
  try {
    return measure_from_json(doc);
  } catch (const Error& e) {
    throw Error(Errc::SchemaError, path + ": " + e.what());
  }
}

void save_measure(const std::string& path, const measures::MeasurePair& pair) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
  out << measure_to_json(pair).dump(2) << '\n';
}

json report_to_json(const InequalityReport& r) {
  json doc;
  doc["name"] = r.name;
  doc["lhs"] = r.lhs;
  doc["rhs"] = r.rhs;
  doc["gap"] = r.gap;
  doc["equality"] = r.equality;
  doc["eq_tol"] = r.eq_tol;
  doc["meta"] = json::object();
  for (const auto& [k, v] : r.meta) doc["meta"][k] = v;
  return doc;
}

InequalityReport report_from_json(const json& doc) {
  InequalityReport r;
  try {
    r.name = doc.at("name").get<std::string>();
    r.lhs = doc.at("lhs").get<double>();
    r.rhs = doc.at("rhs").get<double>();
    r.gap = doc.at("gap").get<double>();
    r.equality = doc.at("equality").get<bool>();
    r.eq_tol = doc.at("eq_tol").get<double>();
    for (const auto& [k, v] : doc.at("meta").items()) r.meta[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("report: ") + e.what());
  }
  return r;
}

}  // namespace wulffkit::io
