#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qmk/discrepancy.hpp"
#include "qmk/grid_function.hpp"
#include "qmk/measures.hpp"

namespace qmk {

using Integrand = std::function<double(std::span<const double>)>;

/// Koksma-Hlawka error certificate: |estimate - integral| <= V_HK(f) * D*(points; mu).
struct KHCertificate {
  double estimate = 0.0;
  std::optional<double> reference_integral;
  std::optional<double> observed_error;
  /// Hardy-Krause variation anchored at 1.
  double variation = 0.0;
  /// False when `variation` is only a grid-sampled proxy (a lower bound), not a certified value.
  bool variation_certified = true;
  double discrepancy = 0.0;
  double bound = 0.0;
  /// observed_error <= bound + 1e-10; false when no reference integral is available.
  bool satisfied = false;
};

double qmc_estimate(const GridFunction& f, const PointSet& ps);
double qmc_estimate(const Integrand& f, const PointSet& ps);

/// Exact integral of f with respect to m. Supported: any f with a discrete m, step
/// functions with any m (cell values times box measures), and multilinear f with the
/// uniform measure. Anything else throws ValidationError.
double integral_under_measure(const GridFunction& f, const Measure& m);

KHCertificate kh_certificate(const GridFunction& f, const PointSet& ps, const Measure& m,
                             const DiscrepancyOptions& options = {});

struct ImportanceSamplingOptions {
  /// Caller-supplied bound on V_HK(f/g); taken as certified.
  std::optional<double> variation_bound;
  /// Breakpoints on which f/g is sampled when no bound is given (default: 33 per axis).
  std::optional<std::vector<std::vector<double>>> ratio_grid;
  /// Known value of the integral of f over [0,1]^d.
  std::optional<double> reference_integral;
  DiscrepancyOptions discrepancy;
};

struct ImportanceSamplingResult {
  double estimate = 0.0;
  KHCertificate certificate;
};

/// (1/N) sum f(x_n)/g(x_n) with a certificate bounding its distance to the Lebesgue
/// integral of f by V_HK(f/g) * D*(points; mu_g). Throws when g <= 0 at a sample point.
ImportanceSamplingResult importance_sampling_estimate(const Integrand& f, const Integrand& g,
                                                      const PointSet& ps, const Measure& mu_g,
                                                      const ImportanceSamplingOptions& options = {});

/// Step functions f and g on a shared grid: the ratio is again a step function, so
/// its variation and the reference integral are exact.
ImportanceSamplingResult importance_sampling_estimate(const GridFunction& f, const GridFunction& g,
                                                      const PointSet& ps, const Measure& mu_g,
                                                      const DiscrepancyOptions& options = {});

}  // namespace qmk
