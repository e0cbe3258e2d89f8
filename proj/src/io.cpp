#include "qmk/io.hpp"

#include <fstream>
#include <sstream>

namespace qmk::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) fail(path, "expected a positive integer");
  return j.get<std::size_t>();
}

/// Re-labels a ValidationError from a constructor with the JSON path it came from.
template <class F>
auto with_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

json sides_to_json(const std::vector<LimitSide>& sides) {
  json out = json::array();
  for (auto s : sides) out.push_back(s == LimitSide::AtPoint ? "at_point" : "left_limit");
  return out;
}

}  // namespace

json parse(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << source << ": line " << line << ", column " << column << ": malformed JSON";
    throw ValidationError(os.str());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write file");
  out << content;
}

Measure measure_from_json(const json& j) {
  const std::string type = [&] {
    const json& t = field(j, "type", "measure");
    if (!t.is_string()) fail("measure.type", "expected a string");
    return t.get<std::string>();
  }();

  if (type == "uniform") {
    return Measure::uniform(positive_int(field(j, "d", "measure"), "measure.d"));
  }
  if (type == "chelson") return chelson::measure();
  if (type == "discrete") {
    const json& atoms = field(j, "atoms", "measure");
    if (!atoms.is_array() || atoms.empty()) fail("measure.atoms", "expected a non-empty array");
    std::vector<Atom> parsed;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string p = "measure.atoms[" + std::to_string(i) + "]";
      parsed.push_back({numbers(field(atoms[i], "x", p), p + ".x"), number(field(atoms[i], "w", p), p + ".w")});
    }
    const std::size_t d = parsed.front().location.size();
    if (d == 0) fail("measure.atoms[0].x", "expected at least one coordinate");
    return with_path("measure", [&] { return Measure::discrete(DiscreteSignedMeasure(d, std::move(parsed))); });
  }
  if (type == "product") {
    const json& axes = field(j, "axes", "measure");
    if (!axes.is_array() || axes.empty()) fail("measure.axes", "expected a non-empty array");
    std::vector<AxisCdf> parsed;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string p = "measure.axes[" + std::to_string(i) + "]";
      auto b = numbers(field(axes[i], "breakpoints", p), p + ".breakpoints");
      auto v = numbers(field(axes[i], "values", p), p + ".values");
      std::vector<double> left;
      if (axes[i].contains("values_left")) left = numbers(axes[i]["values_left"], p + ".values_left");
      parsed.push_back(with_path(p, [&] { return AxisCdf(std::move(b), std::move(v), std::move(left)); }));
    }
    return Measure::product(std::move(parsed));
  }
  fail("measure.type", "unknown measure type '" + type + "'");
}

json measure_to_json(const Measure& m) {
  switch (m.kind()) {
    case Measure::Kind::Uniform:
      return {{"type", "uniform"}, {"d", m.dimension()}};
    case Measure::Kind::Discrete:
      return {{"type", "discrete"}, {"atoms", atoms_to_json(m.atoms())}};
    case Measure::Kind::Product: {
      json axes = json::array();
      for (const auto& a : m.product_axes().axes) {
        axes.push_back({{"breakpoints", a.breakpoints()}, {"values", a.values()}, {"values_left", a.values_left()}});
      }
      return {{"type", "product"}, {"axes", axes}};
    }
    case Measure::Kind::Analytic:
      return {{"type", m.describe()}};
  }
  return {};
}

PointSet points_from_json(const json& j) {
  const std::size_t d = positive_int(field(j, "d", "points"), "points.d");
  const json& pts = field(j, "points", "points");
  if (!pts.is_array() || pts.empty()) fail("points.points", "expected a non-empty array");
  std::vector<Point> parsed;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = "points.points[" + std::to_string(i) + "]";
    auto x = numbers(pts[i], p);
    with_path(p, [&] {
      require_unit_point(x, d, "point");
      return 0;
    });
    parsed.push_back(std::move(x));
  }
  return PointSet(d, std::move(parsed));
}

json points_to_json(const PointSet& ps) {
  return {{"d", ps.dimension()}, {"points", ps.points()}};
}

std::string points_to_csv(const PointSet& ps) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t s = 0; s < ps.dimension(); ++s) os << (s ? "," : "") << "x" << s + 1;
  os << "\n";
  for (const auto& x : ps) {
    for (std::size_t s = 0; s < x.size(); ++s) os << (s ? "," : "") << x[s];
    os << "\n";
  }
  return os.str();
}

std::string interp_name(Interp interp) {
  switch (interp) {
    case Interp::Multilinear: return "multilinear";
    case Interp::RightContinuousStep: return "step";
    case Interp::LeftContinuousStep: return "step_left";
  }
  return "multilinear";
}

GridFunction grid_function_from_json(const json& j) {
  const json& bj = field(j, "breakpoints", "function");
  if (!bj.is_array() || bj.empty()) fail("function.breakpoints", "expected a non-empty array of arrays");
  std::vector<std::vector<double>> bps;
  for (std::size_t s = 0; s < bj.size(); ++s) {
    bps.push_back(numbers(bj[s], "function.breakpoints[" + std::to_string(s) + "]"));
  }
  auto values = numbers(field(j, "values", "function"), "function.values");
  Interp interp = Interp::Multilinear;
  if (j.contains("interp")) {
    const json& ij = j["interp"];
    const std::string name = ij.is_string() ? ij.get<std::string>() : "";
    if (name == "step") interp = Interp::RightContinuousStep;
    else if (name == "step_left") interp = Interp::LeftContinuousStep;
    else if (name == "multilinear") interp = Interp::Multilinear;
    else fail("function.interp", "expected \"step\", \"step_left\" or \"multilinear\"");
  }
  return with_path("function", [&] { return GridFunction(std::move(bps), std::move(values), interp); });
}

json grid_function_to_json(const GridFunction& f) {
  return {{"breakpoints", f.breakpoints()}, {"values", f.values()}, {"interp", interp_name(f.interp())}};
}

json atoms_to_json(const DiscreteSignedMeasure& nu) {
  json out = json::array();
  for (const auto& a : nu.atoms()) out.push_back({{"x", a.location}, {"w", a.weight}});
  return out;
}

json discrepancy_to_json(const DiscrepancyResult& r) {
  return {{"value", r.value},
          {"witness", r.witness_box.upper},
          {"witness_sides", sides_to_json(r.witness_sides)},
          {"attained", r.attained},
          {"method", r.method == DiscrepancyResult::Method::ExactGrid ? "exact" : "search"}};
}

json certificate_to_json(const KHCertificate& c) {
  json out = {{"estimate", c.estimate},
              {"variation", c.variation},
              {"variation_certified", c.variation_certified},
              {"discrepancy", c.discrepancy},
              {"bound", c.bound},
              {"satisfied", c.satisfied}};
  out["reference_integral"] = c.reference_integral ? json(*c.reference_integral) : json(nullptr);
  out["observed_error"] = c.observed_error ? json(*c.observed_error) : json(nullptr);
  return out;
}

}  // namespace qmk::io
