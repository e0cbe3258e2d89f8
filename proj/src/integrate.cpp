#include "qmk/integrate.hpp"

#include <cmath>

#include "qmk/variation.hpp"

namespace qmk {

namespace {

constexpr double kCertificateSlack = 1e-10;

void finish(KHCertificate& c) {
  c.bound = c.variation * c.discrepancy;
  if (c.reference_integral) {
    c.observed_error = std::abs(c.estimate - *c.reference_integral);
    c.satisfied = *c.observed_error <= c.bound + kCertificateSlack;
  }
}

double step_integral(const GridFunction& f, const Measure& m) {
  const std::size_t d = f.dimension();
  const bool right = f.interp() == Interp::RightContinuousStep;
  Point lower(d), upper(d);
  std::vector<BoxClosure> closure(d);
  double total = 0.0;
  for (std::size_t k = 0; k < f.vertex_count(); ++k) {
    const double v = f.at_flat(k);
    if (v == 0.0) continue;
    const auto idx = f.multi_index(k);
    for (std::size_t s = 0; s < d; ++s) {
      const auto& b = f.breakpoints(s);
      const std::size_t i = idx[s];
      if (right) {
        // [b_i, b_{i+1}), or {1} for the last breakpoint.
        lower[s] = b[i];
        const bool last = i + 1 == b.size();
        upper[s] = last ? 1.0 : b[i + 1];
        closure[s] = {true, last};
      } else {
        // (b_{i-1}, b_i], or {0} for the first breakpoint.
        upper[s] = b[i];
        lower[s] = i == 0 ? 0.0 : b[i - 1];
        closure[s] = {i == 0, true};
      }
    }
    total += v * box_measure(m, lower, upper, closure);
  }
  return total;
}

double multilinear_uniform_integral(const GridFunction& f) {
  const std::size_t d = f.dimension();
  double total = 0.0;
  for (std::size_t k = 0; k < f.vertex_count(); ++k) {
    // A multilinear cell integrates to its volume times the corner average, so each
    // vertex carries the product of half the adjacent interval lengths.
    const auto idx = f.multi_index(k);
    double w = 1.0;
    for (std::size_t s = 0; s < d; ++s) {
      const auto& b = f.breakpoints(s);
      double len = 0.0;
      if (idx[s] > 0) len += b[idx[s]] - b[idx[s] - 1];
      if (idx[s] + 1 < b.size()) len += b[idx[s] + 1] - b[idx[s]];
      w *= 0.5 * len;
    }
    total += w * f.at_flat(k);
  }
  return total;
}

}  // namespace

double qmc_estimate(const GridFunction& f, const PointSet& ps) {
  return qmc_estimate(Integrand([&f](std::span<const double> x) { return f(x); }), ps);
}

double qmc_estimate(const Integrand& f, const PointSet& ps) {
  if (ps.empty()) throw ValidationError("qmc_estimate: empty point set");
  double total = 0.0;
  for (const auto& x : ps) {
    require_unit_point(x, ps.dimension(), "sample point");
    total += f(x);
  }
  return total / static_cast<double>(ps.size());
}

double integral_under_measure(const GridFunction& f, const Measure& m) {
  if (f.dimension() != m.dimension()) throw ValidationError("integral: dimension mismatch");
  if (m.kind() == Measure::Kind::Discrete) {
    double total = 0.0;
    for (const auto& a : m.atoms().atoms()) total += a.weight * f(a.location);
    return total;
  }
  if (f.interp() != Interp::Multilinear) return step_integral(f, m);
  if (m.kind() == Measure::Kind::Uniform) return multilinear_uniform_integral(f);
  throw ValidationError("integral of a multilinear function is only supported for uniform or discrete measures");
}

KHCertificate kh_certificate(const GridFunction& f, const PointSet& ps, const Measure& m,
                             const DiscrepancyOptions& options) {
  KHCertificate c;
  c.estimate = qmc_estimate(f, ps);
  c.reference_integral = integral_under_measure(f, m);
  c.variation = hk_variation(f, Anchor::One);
  c.discrepancy = star_discrepancy(ps, m, options).value;
  finish(c);
  return c;
}

ImportanceSamplingResult importance_sampling_estimate(const Integrand& f, const Integrand& g,
                                                      const PointSet& ps, const Measure& mu_g,
                                                      const ImportanceSamplingOptions& options) {
  if (ps.empty()) throw ValidationError("importance sampling: empty point set");
  const Integrand ratio = [&](std::span<const double> x) {
    const double gx = g(x);
    if (!(gx > 0.0)) throw ValidationError("importance density must be positive at every sample point");
    return f(x) / gx;
  };

  ImportanceSamplingResult r;
  r.estimate = qmc_estimate(ratio, ps);
  KHCertificate& c = r.certificate;
  c.estimate = r.estimate;
  c.reference_integral = options.reference_integral;
  if (options.variation_bound) {
    c.variation = *options.variation_bound;
  } else {
    auto grid = options.ratio_grid.value_or(std::vector<std::vector<double>>());
    if (grid.empty()) {
      std::vector<double> axis(33);
      for (std::size_t i = 0; i < axis.size(); ++i) axis[i] = static_cast<double>(i) / 32.0;
      grid.assign(ps.dimension(), axis);
    }
    c.variation = hk_variation(GridFunction::sample(std::move(grid), ratio), Anchor::One);
    c.variation_certified = false;
  }
  c.discrepancy = star_discrepancy(ps, mu_g, options.discrepancy).value;
  finish(c);
  return r;
}

ImportanceSamplingResult importance_sampling_estimate(const GridFunction& f, const GridFunction& g,
                                                      const PointSet& ps, const Measure& mu_g,
                                                      const DiscrepancyOptions& options) {
  if (f.breakpoints() != g.breakpoints() || f.interp() != g.interp())
    throw ValidationError("importance sampling: f and g must share grid and interpretation");
  if (f.interp() == Interp::Multilinear)
    throw ValidationError("importance sampling on grids needs step functions");
  std::vector<double> ratio(f.vertex_count());
  for (std::size_t k = 0; k < ratio.size(); ++k) {
    if (!(g.at_flat(k) > 0.0)) throw ValidationError("importance density must be positive");
    ratio[k] = f.at_flat(k) / g.at_flat(k);
  }
  const GridFunction h = f.with_values(std::move(ratio));

  ImportanceSamplingResult r;
  r.estimate = qmc_estimate(h, ps);
  KHCertificate& c = r.certificate;
  c.estimate = r.estimate;
  c.reference_integral = integral_under_measure(f, Measure::uniform(f.dimension()));
  c.variation = hk_variation(h, Anchor::One);
  c.discrepancy = star_discrepancy(ps, mu_g, options).value;
  finish(c);
  return r;
}

}  // namespace qmk
