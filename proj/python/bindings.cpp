#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmk/discrepancy.hpp"
#include "qmk/integrate.hpp"
#include "qmk/io.hpp"
#include "qmk/sequences.hpp"
#include "qmk/transforms.hpp"
#include "qmk/variation.hpp"

namespace py = pybind11;
using namespace qmk;

namespace {

PointSet to_point_set(const std::vector<Point>& points) {
  if (points.empty()) throw ValidationError("point set must not be empty");
  return PointSet(points.front().size(), points);
}

std::vector<LimitSide> parse_sides(const std::vector<std::string>& sides) {
  std::vector<LimitSide> out;
  for (const auto& s : sides) {
    if (s == "at_point") out.push_back(LimitSide::AtPoint);
    else if (s == "left_limit") out.push_back(LimitSide::LeftLimit);
    else throw ValidationError("limit side must be 'at_point' or 'left_limit'");
  }
  return out;
}

Interp parse_interp(const std::string& name) {
  if (name == "multilinear") return Interp::Multilinear;
  if (name == "step") return Interp::RightContinuousStep;
  if (name == "step_left") return Interp::LeftContinuousStep;
  throw ValidationError("interp must be 'multilinear', 'step' or 'step_left'");
}

Anchor parse_anchor(const std::string& name) {
  if (name == "one") return Anchor::One;
  if (name == "zero") return Anchor::Zero;
  throw ValidationError("anchor must be 'one' or 'zero'");
}

py::list atoms_to_list(const DiscreteSignedMeasure& nu) {
  py::list out;
  for (const auto& a : nu.atoms()) out.append(py::make_tuple(a.location, a.weight));
  return out;
}

DiscreteSignedMeasure atoms_from_list(std::size_t d, const std::vector<std::pair<Point, double>>& atoms) {
  std::vector<Atom> parsed;
  for (const auto& [x, w] : atoms) parsed.push_back({x, w});
  return DiscreteSignedMeasure(d, std::move(parsed));
}

py::object json_to_python(const io::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

DiscrepancyOptions make_options(std::size_t max_dimension, double cell_budget, unsigned threads) {
  DiscrepancyOptions o;
  o.max_dimension = max_dimension;
  o.cell_budget = cell_budget;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_qmk, m) {
  m.doc() = "Quasi-Monte Carlo integration with respect to general measures";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Measure>(m, "Measure")
      .def_static("uniform", &Measure::uniform, py::arg("d"))
      .def_static(
          "discrete",
          [](std::size_t d, const std::vector<std::pair<Point, double>>& atoms) {
            return Measure::discrete(atoms_from_list(d, atoms));
          },
          py::arg("d"), py::arg("atoms"))
      .def_static(
          "product",
          [](const std::vector<std::vector<double>>& breakpoints, const std::vector<std::vector<double>>& values) {
            if (breakpoints.size() != values.size()) throw ValidationError("one value list per axis is required");
            std::vector<AxisCdf> axes;
            for (std::size_t s = 0; s < breakpoints.size(); ++s) axes.emplace_back(breakpoints[s], values[s]);
            return Measure::product(std::move(axes));
          },
          py::arg("breakpoints"), py::arg("values"))
      .def_static("chelson", &chelson::measure)
      .def_static("empirical", [](const std::vector<Point>& pts) { return Measure::empirical(to_point_set(pts)); })
      .def_static("from_json", [](const std::string& text) { return io::measure_from_json(io::parse(text, "measure")); })
      .def_property_readonly("dimension", &Measure::dimension)
      .def("cdf",
           [](const Measure& self, const Point& a, const std::vector<std::string>& sides) {
             return cdf_eval(self, a, parse_sides(sides));
           },
           py::arg("a"), py::arg("sides") = std::vector<std::string>{})
      .def("__repr__", [](const Measure& self) { return "<Measure " + self.describe() + ">"; });

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init([](std::vector<std::vector<double>> breakpoints, std::vector<double> values,
                       const std::string& interp) {
             return GridFunction(std::move(breakpoints), std::move(values), parse_interp(interp));
           }),
           py::arg("breakpoints"), py::arg("values"), py::arg("interp") = "multilinear")
      .def_property_readonly("breakpoints", [](const GridFunction& f) { return f.breakpoints(); })
      .def_property_readonly("values", &GridFunction::values)
      .def_property_readonly("interp", [](const GridFunction& f) { return io::interp_name(f.interp()); })
      .def_property_readonly("dimension", &GridFunction::dimension)
      .def("__call__", [](const GridFunction& f, const Point& x) { return f(x); });

  m.def("local_discrepancy",
        [](const Point& a, const std::vector<Point>& pts, const Measure& mu, const std::vector<std::string>& sides) {
          return local_discrepancy(a, to_point_set(pts), mu, parse_sides(sides));
        },
        py::arg("a"), py::arg("points"), py::arg("measure"), py::arg("sides") = std::vector<std::string>{});
  m.def("star_discrepancy",
        [](const std::vector<Point>& pts, const Measure& mu, std::size_t max_dimension, double cell_budget,
           unsigned threads) {
          return json_to_python(
              io::discrepancy_to_json(star_discrepancy(to_point_set(pts), mu, make_options(max_dimension, cell_budget, threads))));
        },
        py::arg("points"), py::arg("measure"), py::arg("max_dimension") = 4, py::arg("cell_budget") = 1e8,
        py::arg("threads") = 1);
  m.def("random_search_lower_bound",
        [](const std::vector<Point>& pts, const Measure& mu, std::size_t trials, std::uint64_t seed) {
          return json_to_python(io::discrepancy_to_json(random_search_lower_bound(to_point_set(pts), mu, trials, seed)));
        },
        py::arg("points"), py::arg("measure"), py::arg("trials"), py::arg("seed"));

  m.def("hk_variation", [](const GridFunction& f, const std::string& anchor) { return hk_variation(f, parse_anchor(anchor)); },
        py::arg("f"), py::arg("anchor") = "one");
  m.def("vitali_variation", [](const GridFunction& f) { return vitali_variation(f); }, py::arg("f"));
  m.def("hk0_prefix", [](const GridFunction& f, const Point& x) { return hk0_prefix(f, x); }, py::arg("f"), py::arg("x"));
  m.def("is_completely_monotone", &is_completely_monotone, py::arg("f"), py::arg("tolerance") = kTolerance);
  m.def("jordan_decompose",
        [](const GridFunction& f) {
          auto p = jordan_decompose_function(f);
          return py::make_tuple(p.positive, p.negative);
        },
        py::arg("f"));
  m.def("leonov_decompose",
        [](const GridFunction& f) {
          auto p = leonov_decompose(f);
          return py::make_tuple(p.increasing, p.remainder);
        },
        py::arg("f"));
  m.def("mirror", &mirror, py::arg("f"));
  m.def("function_to_measure", [](const GridFunction& f) { return atoms_to_list(function_to_measure(f)); }, py::arg("f"));
  m.def("measure_to_function",
        [](std::size_t d, const std::vector<std::pair<Point, double>>& atoms) {
          return measure_to_function(atoms_from_list(d, atoms));
        },
        py::arg("d"), py::arg("atoms"));
  m.def("total_variation",
        [](std::size_t d, const std::vector<std::pair<Point, double>>& atoms) {
          return total_variation(atoms_from_list(d, atoms));
        },
        py::arg("d"), py::arg("atoms"));

  m.def("product_transform",
        [](const std::vector<Point>& pts, const Measure& mu) { return product_transform(to_point_set(pts), mu).points(); },
        py::arg("points"), py::arg("measure"));
  m.def("chelson_transform",
        [](const Point& x) { return conditional_transform_2d(x, chelson::conditional_cdf()); }, py::arg("x"));
  m.def("chelson_tilde_g", [](const Point& y) { return tilde_g_map(y, chelson::conditional_cdf()); }, py::arg("y"));
  m.def("pseudo_inverse",
        [](const std::function<double(double)>& g, double y) { return pseudo_inverse(g, y); }, py::arg("g"),
        py::arg("y"));

  m.def("qmc_estimate",
        [](const GridFunction& f, const std::vector<Point>& pts) { return qmc_estimate(f, to_point_set(pts)); },
        py::arg("f"), py::arg("points"));
  m.def("integral_under_measure", &integral_under_measure, py::arg("f"), py::arg("measure"));
  m.def("kh_certificate",
        [](const GridFunction& f, const std::vector<Point>& pts, const Measure& mu) {
          return json_to_python(io::certificate_to_json(kh_certificate(f, to_point_set(pts), mu)));
        },
        py::arg("f"), py::arg("points"), py::arg("measure"));

  m.def("van_der_corput", &van_der_corput, py::arg("n"), py::arg("base"));
  m.def("halton", [](std::size_t n, std::size_t d) { return halton(n, d).points(); }, py::arg("n"), py::arg("d"));
}
