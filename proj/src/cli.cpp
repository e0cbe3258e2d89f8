#include "qmk/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "qmk/io.hpp"
#include "qmk/sequences.hpp"
#include "qmk/transforms.hpp"
#include "qmk/variation.hpp"

namespace qmk::cli {

namespace {

using io::json;

json config_to_json(const Config& c) {
  json j = {{"subcommand", c.subcommand}, {"tolerance", c.tolerance}, {"budget", c.budget},
            {"seed", c.seed},             {"format", c.format}};
  if (!c.points_path.empty()) j["points"] = c.points_path;
  if (!c.measure_path.empty()) j["measure"] = c.measure_path;
  if (!c.function_path.empty()) j["f"] = c.function_path;
  if (!c.out_path.empty()) j["out"] = c.out_path;
  if (c.subcommand == "discrepancy") {
    j["method"] = c.method;
    j["trials"] = c.trials;
  } else if (c.subcommand == "generate") {
    j["kind"] = c.kind;
    j["n"] = c.n;
    j["d"] = c.d;
  } else if (c.subcommand == "integrate") {
    j["certify"] = c.certify;
  } else if (c.subcommand == "counterexample") {
    j["samples"] = c.samples;
  }
  return j;
}

void validate(const Config& c) {
  if (!(c.tolerance > 0)) throw ValidationError("--tolerance must be positive");
  if (!(c.budget >= 1)) throw ValidationError("--budget must be at least 1");
  if (c.format != "json" && c.format != "csv") throw ValidationError("--format must be json or csv");
}

std::string require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw ValidationError(std::string("missing required option ") + flag);
  return path;
}

DiscrepancyOptions discrepancy_options(const Config& c) {
  DiscrepancyOptions o;
  o.cell_budget = c.budget;
  o.threads = thread_cap();
  return o;
}

json rational(double value, const char* exact) { return {{"value", value}, {"exact", exact}}; }

struct Report {
  json result;
  std::string csv;  // set when the subcommand produced tabular output
};

void require_json_format(const Config& c) {
  if (c.format != "json") throw ValidationError("subcommand '" + c.subcommand + "' only supports --format json");
}

Report run_discrepancy(const Config& c) {
  require_json_format(c);
  const PointSet ps = io::points_from_json(io::read_file(require_path(c.points_path, "--points")));
  const Measure m = c.measure_path.empty() ? Measure::uniform(ps.dimension())
                                           : io::measure_from_json(io::read_file(c.measure_path));
  if (c.method == "exact") return {io::discrepancy_to_json(star_discrepancy(ps, m, discrepancy_options(c))), {}};
  if (c.method == "search") return {io::discrepancy_to_json(random_search_lower_bound(ps, m, c.trials, c.seed)), {}};
  throw ValidationError("--method must be exact or search");
}

Report run_variation(const Config& c) {
  require_json_format(c);
  const GridFunction f = io::grid_function_from_json(io::read_file(require_path(c.function_path, "--f")));
  return {{{"hk_one", hk_variation(f, Anchor::One)},
           {"hk_zero", hk_variation(f, Anchor::Zero)},
           {"vitali", vitali_variation(f)},
           {"completely_monotone", is_completely_monotone(f, c.tolerance)}},
          {}};
}

Report run_decompose(const Config& c) {
  require_json_format(c);
  const GridFunction f = io::grid_function_from_json(io::read_file(require_path(c.function_path, "--f")));
  const JordanPair jp = jordan_decompose_function(f);
  const LeonovPair lp = leonov_decompose(f);
  json r;
  r["origin_value"] = f.at_flat(0);
  r["hk_zero"] = hk_variation(f, Anchor::Zero);
  r["jordan"] = {{"positive", io::grid_function_to_json(jp.positive)},
                 {"negative", io::grid_function_to_json(jp.negative)},
                 {"positive_completely_monotone", is_completely_monotone(jp.positive, c.tolerance)},
                 {"negative_completely_monotone", is_completely_monotone(jp.negative, c.tolerance)}};
  r["leonov"] = {{"increasing", io::grid_function_to_json(lp.increasing)},
                 {"remainder", io::grid_function_to_json(lp.remainder)}};
  if (f.interp() == Interp::RightContinuousStep) {
    const DiscreteSignedMeasure nu = function_to_measure(f, c.tolerance);
    const GridFunction back = measure_to_function(nu);
    bool round_trip = true;
    for (std::size_t k = 0; k < f.vertex_count() && round_trip; ++k) {
      const Point x = f.vertex(f.multi_index(k));
      round_trip = std::abs(back(x) - f.at_flat(k)) <= 1e-10;
    }
    r["measure"] = {{"atoms", io::atoms_to_json(nu)},
                    {"total_variation", total_variation(nu)},
                    {"round_trip", round_trip}};
  }
  return {r, {}};
}

Report run_transform(const Config& c) {
  const PointSet ps = io::points_from_json(io::read_file(require_path(c.points_path, "--points")));
  const Measure m = io::measure_from_json(io::read_file(require_path(c.measure_path, "--measure")));
  PointSet out;
  if (m.kind() == Measure::Kind::Analytic && m.describe() == "chelson") {
    std::vector<Point> images;
    const auto cdf = chelson::conditional_cdf();
    for (const auto& x : ps) images.push_back(conditional_transform_2d(x, cdf));
    out = PointSet(2, std::move(images));
  } else {
    out = product_transform(ps, m);
  }
  if (c.format == "csv") return {{}, io::points_to_csv(out)};
  return {io::points_to_json(out), {}};
}

Report run_integrate(const Config& c) {
  require_json_format(c);
  const GridFunction f = io::grid_function_from_json(io::read_file(require_path(c.function_path, "--f")));
  const Measure m = io::measure_from_json(io::read_file(require_path(c.measure_path, "--measure")));
  const PointSet ps = io::points_from_json(io::read_file(require_path(c.points_path, "--points")));
  if (c.certify) return {io::certificate_to_json(kh_certificate(f, ps, m, discrepancy_options(c))), {}};
  return {{{"estimate", qmc_estimate(f, ps)}, {"reference_integral", integral_under_measure(f, m)}}, {}};
}

Report run_generate(const Config& c) {
  if (c.kind != "halton") throw ValidationError("--kind must be halton");
  const PointSet ps = halton(c.n, c.d);
  if (c.format == "csv") return {{}, io::points_to_csv(ps)};
  return {io::points_to_json(ps), {}};
}

Report run_counterexample(const Config& c) {
  const PointSet ps(2, {{56.0 / 81.0, 20.0 / 23.0}});
  const Point corner{1.0, 8.0 / 10.0};
  const auto cdf = chelson::conditional_cdf();
  if (c.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "set,x1,x2\n";
    for (const auto& s : image_boundary(cdf, corner, c.samples)) os << s.set << "," << s.x1 << "," << s.x2 << "\n";
    os << "x," << ps[0][0] << "," << ps[0][1] << "\n";
    return {{}, os.str()};
  }
  const Measure m = chelson::measure();
  const IdentityCheckReport r = chelson_identity_check(ps, cdf, m, corner, discrepancy_options(c));
  json j;
  j["point"] = ps[0];
  j["transformed"] = {{"value", r.images[0]}, {"exact", {"7/9", "20/27"}}};
  j["transformed_discrepancy"] = io::discrepancy_to_json(r.transformed);
  j["transformed_discrepancy"]["exact"] = "610/729";
  j["original_discrepancy"] = io::discrepancy_to_json(r.original);
  j["original_discrepancy"]["exact"] = "20/23";
  j["difference"] = r.difference;
  j["discrepancy_identity_holds"] = r.discrepancy_identity_holds;
  j["corner"] = {{"value", r.corner}, {"exact", {"1", "8/10"}}};
  j["tilde_corner"] = {{"value", r.tilde_corner}, {"exact", {"1", "8/10"}}};
  j["indicator_transformed_in_box"] = r.images_in_box;
  j["indicator_point_in_tilde_box"] = r.points_in_tilde_box;
  j["counting_identity_holds"] = r.counting_identity_holds;
  j["measure_of_box"] = rational(r.measure_of_box, "22/25");
  j["lebesgue_of_tilde_box"] = rational(r.lebesgue_of_tilde_box, "8/10");
  j["measure_identity_holds"] = r.measure_identity_holds;
  j["marginal_at_transformed"] = rational(chelson::marginal(r.images[0][0]), "56/81");
  j["conditional_at_transformed"] = rational(chelson::conditional(r.images[0][1], r.images[0][0]), "20/23");
  return {j, {}};
}

Report dispatch(const Config& c) {
  if (c.subcommand == "discrepancy") return run_discrepancy(c);
  if (c.subcommand == "variation") return run_variation(c);
  if (c.subcommand == "decompose") return run_decompose(c);
  if (c.subcommand == "transform") return run_transform(c);
  if (c.subcommand == "integrate") return run_integrate(c);
  if (c.subcommand == "generate") return run_generate(c);
  if (c.subcommand == "counterexample") return run_counterexample(c);
  throw ValidationError("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace

unsigned thread_cap() {
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QMK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

int run(const Config& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Report report = dispatch(config);
    std::string text;
    if (!report.csv.empty()) {
      text = report.csv;
    } else {
      json doc = {{"config", config_to_json(config)}, {"result", report.result}};
      text = doc.dump(2) + "\n";
    }
    if (config.out_path.empty()) {
      out << text;
    } else {
      io::write_file(config.out_path, text);
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace qmk::cli
