#include "qmk/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace qmk {

ConditionalCdf2D ConditionalCdf2D::from_product(const Measure& product) {
  if (product.kind() != Measure::Kind::Product && product.kind() != Measure::Kind::Uniform)
    throw ValidationError("from_product needs a product or uniform measure");
  if (product.dimension() != 2) throw ValidationError("from_product needs a 2-dimensional measure");
  if (product.kind() == Measure::Kind::Uniform) return identity();

  const auto axes = product.product_axes().axes;
  ConditionalCdf2D c;
  c.marginal = [g = axes[0]](double y) { return g(y); };
  c.conditional = [g = axes[1]](double y2, double) { return g(y2); };
  c.marginal_inverse = [g = axes[0]](double x) { return g.pseudo_inverse(x); };
  c.conditional_inverse = [g = axes[1]](double x, double) { return g.pseudo_inverse(x); };
  c.positive_density = axes[0].strictly_increasing() && axes[1].strictly_increasing();
  return c;
}

ConditionalCdf2D ConditionalCdf2D::identity() {
  ConditionalCdf2D c;
  c.marginal = [](double y) { return y; };
  c.conditional = [](double y2, double) { return y2; };
  c.marginal_inverse = [](double x) { return x; };
  c.conditional_inverse = [](double x, double) { return x; };
  return c;
}

double pseudo_inverse(const AxisCdf& G, double y) { return G.pseudo_inverse(y); }

double pseudo_inverse(const std::function<double(double)>& G, double y) {
  if (G(0.0) >= y) return 0.0;
  double lo = 0.0;  // G(lo) < y
  double hi = 1.0;  // G(hi) >= y
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (G(mid) >= y) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

PointSet product_transform(const PointSet& ps, const Measure& m) {
  if (ps.dimension() != m.dimension()) throw ValidationError("product_transform: dimension mismatch");
  if (m.kind() == Measure::Kind::Uniform) return ps;
  if (m.kind() != Measure::Kind::Product) throw ValidationError("product_transform needs a product measure");
  const auto& axes = m.product_axes().axes;
  std::vector<Point> out;
  out.reserve(ps.size());
  for (const auto& x : ps) {
    Point z(x.size());
    for (std::size_t s = 0; s < z.size(); ++s) z[s] = axes[s].pseudo_inverse(x[s]);
    out.push_back(std::move(z));
  }
  return PointSet(ps.dimension(), std::move(out));
}

Point conditional_transform_2d(std::span<const double> x, const ConditionalCdf2D& cdf) {
  require_unit_point(x, 2, "point");
  const double z1 = cdf.marginal_inverse ? cdf.marginal_inverse(x[0]) : pseudo_inverse(cdf.marginal, x[0]);
  const auto given_z1 = [&](double y2) { return cdf.conditional(y2, z1); };
  const double z2 =
      cdf.conditional_inverse ? cdf.conditional_inverse(x[1], z1) : pseudo_inverse(given_z1, x[1]);
  if (!cdf.positive_density) {
    // Without a positive density the conditional may jump over x2 or be flat at z2.
    const double hit = given_z1(z2);
    const bool flat_after = z2 < 1.0 && given_z1(std::min(1.0, z2 + 1e-9)) <= x[1];
    if (std::abs(hit - x[1]) > 1e-12 || flat_after)
      throw ValidationError("conditional CDF is not invertible at the transformed first coordinate");
  }
  return {std::clamp(z1, 0.0, 1.0), std::clamp(z2, 0.0, 1.0)};
}

Point tilde_g_map(std::span<const double> y, const ConditionalCdf2D& cdf) {
  require_unit_point(y, 2, "point");
  return {cdf.marginal(y[0]), cdf.conditional(y[1], y[0])};
}

Point tilde_g_map(std::span<const double> y, const Measure& product) {
  require_unit_point(y, product.dimension(), "point");
  if (product.kind() == Measure::Kind::Uniform) return Point(y.begin(), y.end());
  if (product.kind() != Measure::Kind::Product) throw ValidationError("tilde_g_map needs a product measure");
  const auto& axes = product.product_axes().axes;
  Point out(y.size());
  for (std::size_t s = 0; s < y.size(); ++s) out[s] = axes[s](y[s]);
  return out;
}

namespace chelson {

double density(double y1, double y2) { return y1 <= y2 ? 0.5 : 1.5; }

double cdf(double a1, double a2) {
  if (a1 <= a2) return 0.5 * a1 * a1 + 0.5 * a1 * a2;
  return 1.5 * a1 * a2 - 0.5 * a2 * a2;
}

double marginal(double y1) { return 0.5 * (y1 * y1 + y1); }

double marginal_inverse(double x1) { return 0.5 * (std::sqrt(1.0 + 8.0 * x1) - 1.0); }

double conditional(double y2, double y1) {
  if (y1 <= y2) return (y2 + 2.0 * y1) / (1.0 + 2.0 * y1);
  return 3.0 * y2 / (1.0 + 2.0 * y1);
}

double conditional_inverse(double x2, double y1) {
  const double scale = 1.0 + 2.0 * y1;
  // Value of the conditional CDF at the diagonal y2 = y1.
  const double kink = 3.0 * y1 / scale;
  if (x2 >= kink) return x2 * scale - 2.0 * y1;
  return x2 * scale / 3.0;
}

ConditionalCdf2D conditional_cdf() {
  ConditionalCdf2D c;
  c.marginal = marginal;
  c.conditional = conditional;
  c.marginal_inverse = marginal_inverse;
  c.conditional_inverse = conditional_inverse;
  c.positive_density = true;
  return c;
}

Measure measure() {
  AnalyticCdf a;
  a.dimension = 2;
  a.cdf = [](std::span<const double> p) { return cdf(p[0], p[1]); };
  a.continuous = true;
  a.name = "chelson";
  return Measure::analytic(std::move(a));
}

}  // namespace chelson

IdentityCheckReport chelson_identity_check(const PointSet& ps, const ConditionalCdf2D& cdf,
                                           const Measure& m, std::span<const double> a,
                                           const DiscrepancyOptions& options) {
  if (ps.dimension() != 2 || m.dimension() != 2)
    throw ValidationError("identity check is defined for d = 2");
  constexpr double tol = 1e-10;
  IdentityCheckReport r;
  for (const auto& x : ps) r.images.push_back(conditional_transform_2d(x, cdf));
  const PointSet images(2, r.images);

  r.transformed = star_discrepancy(images, m, options);
  r.original = star_discrepancy(ps, Measure::uniform(2), options);
  r.difference = r.transformed.value - r.original.value;
  r.discrepancy_identity_holds = std::abs(r.difference) <= tol;

  r.corner.assign(a.begin(), a.end());
  r.tilde_corner = tilde_g_map(a, cdf);
  for (const auto& z : r.images) {
    if (z[0] <= a[0] && z[1] <= a[1]) ++r.images_in_box;
  }
  for (const auto& x : ps) {
    if (x[0] <= r.tilde_corner[0] && x[1] <= r.tilde_corner[1]) ++r.points_in_tilde_box;
  }
  r.counting_identity_holds = r.images_in_box == r.points_in_tilde_box;
  r.measure_of_box = cdf_eval(m, a);
  r.lebesgue_of_tilde_box = r.tilde_corner[0] * r.tilde_corner[1];
  r.measure_identity_holds = std::abs(r.measure_of_box - r.lebesgue_of_tilde_box) <= tol;
  return r;
}

std::vector<BoundarySample> image_boundary(const ConditionalCdf2D& cdf, std::span<const double> a,
                                           std::size_t samples) {
  require_unit_point(a, 2, "corner");
  if (samples < 2) throw ValidationError("image_boundary needs at least 2 samples");
  std::vector<BoundarySample> out;
  for (std::size_t i = 0; i < samples; ++i) {
    const double y1 = a[0] * static_cast<double>(i) / static_cast<double>(samples - 1);
    out.push_back({"A", cdf.marginal(y1), cdf.conditional(a[1], y1)});
  }
  const Point t = tilde_g_map(a, cdf);
  out.push_back({"B", 0.0, t[1]});
  out.push_back({"B", t[0], t[1]});
  out.push_back({"B", t[0], 0.0});
  return out;
}

}  // namespace qmk
