// Command-line front end: `qmk <subcommand> [options]`.

#include <iostream>

#include <CLI11.hpp>

#include "qmk/cli.hpp"

int main(int argc, char** argv) {
  qmk::cli::Config config;
  CLI::App app{"Quasi-Monte Carlo integration with respect to general measures"};
  app.require_subcommand(1);

  auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--tolerance", config.tolerance, "Comparison tolerance")->capture_default_str();
    sub->add_option("--budget", config.budget, "Maximum critical-grid cells for exact discrepancy")
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "Seed for all randomness")->capture_default_str();
    sub->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", config.out_path, "Output file (default: stdout)");
  };

  auto* disc = app.add_subcommand("discrepancy", "Star-discrepancy of a point set w.r.t. a measure");
  disc->add_option("--points", config.points_path, "Point set JSON")->required();
  disc->add_option("--measure", config.measure_path, "Measure JSON (default: uniform)");
  disc->add_option("--method", config.method, "exact or search")
      ->check(CLI::IsMember({"exact", "search"}))
      ->capture_default_str();
  disc->add_option("--trials", config.trials, "Random-search trials")->capture_default_str();

  auto* var = app.add_subcommand("variation", "Hardy-Krause and Vitali variation of a grid function");
  var->add_option("--f", config.function_path, "Grid function JSON")->required();

  auto* dec = app.add_subcommand("decompose", "Jordan and Leonov decompositions, measure round trip");
  dec->add_option("--f", config.function_path, "Grid function JSON")->required();

  auto* tr = app.add_subcommand("transform", "Inverse-CDF transform of a point set");
  tr->add_option("--measure", config.measure_path, "Product or chelson measure JSON")->required();
  tr->add_option("--points", config.points_path, "Point set JSON")->required();

  auto* integ = app.add_subcommand("integrate", "QMC estimate, exact integral and error certificate");
  integ->add_option("--f", config.function_path, "Grid function JSON")->required();
  integ->add_option("--measure", config.measure_path, "Measure JSON")->required();
  integ->add_option("--points", config.points_path, "Point set JSON")->required();
  integ->add_flag("--certify", config.certify, "Emit a Koksma-Hlawka certificate");

  auto* gen = app.add_subcommand("generate", "Low-discrepancy point sets");
  gen->add_option("--kind", config.kind, "Sequence kind")->check(CLI::IsMember({"halton"}))->capture_default_str();
  gen->add_option("--n", config.n, "Number of points")->capture_default_str();
  gen->add_option("--d", config.d, "Dimension")->capture_default_str();

  auto* cex = app.add_subcommand("counterexample", "Sequential-transform counterexample report");
  cex->add_option("--samples", config.samples, "Boundary samples for --format csv")->capture_default_str();

  for (auto* sub : {disc, var, dec, tr, integ, gen, cex}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qmk::cli::kValidation;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return qmk::cli::run(config, std::cout, std::cerr);
}
