#pragma once

// Inverse-CDF point transforms: coordinatewise transforms for product measures and
// the sequential (Rosenblatt) transform through conditional CDFs in two dimensions.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qmk/discrepancy.hpp"
#include "qmk/measures.hpp"
#include "qmk/types.hpp"

namespace qmk {

/// Marginal G1 and conditional G2(y2 | y1) of a distribution on [0,1]^2.
/// Inverses are optional; missing ones are computed by bisection.
struct ConditionalCdf2D {
  std::function<double(double)> marginal;
  std::function<double(double y2, double y1)> conditional;
  std::function<double(double)> marginal_inverse;
  std::function<double(double x2, double y1)> conditional_inverse;
  /// The density is positive, so every conditional CDF is strictly increasing.
  bool positive_density = true;

  /// Conditionals of a product measure are its marginals.
  static ConditionalCdf2D from_product(const Measure& product);
  static ConditionalCdf2D identity();
};

/// min{x in [0,1] : G(x) >= y}.
double pseudo_inverse(const AxisCdf& G, double y);
/// min{x in [0,1] : G(x) >= y} for a nondecreasing G with G(1) = 1, by bisection to 1e-15.
double pseudo_inverse(const std::function<double(double)>& G, double y);

/// Applies the per-axis pseudo-inverse of a product measure to every point.
PointSet product_transform(const PointSet& ps, const Measure& m);

/// z1 = G1^{-1}(x1), z2 = G2^{-1}(x2 | z1).
Point conditional_transform_2d(std::span<const double> x, const ConditionalCdf2D& cdf);

/// (G1(y1), G2(y2 | y1)).
Point tilde_g_map(std::span<const double> y, const ConditionalCdf2D& cdf);
/// (G_1(y_1), ..., G_d(y_d)) for a product measure.
Point tilde_g_map(std::span<const double> y, const Measure& product);

/// The positive non-product density on [0,1]^2 equal to 1/2 where y1 <= y2 and 3/2
/// where y1 > y2, under which the sequential transform does not preserve discrepancy.
namespace chelson {

double density(double y1, double y2);
/// mu([0,a1] x [0,a2]).
double cdf(double a1, double a2);
double marginal(double y1);
double marginal_inverse(double x1);
double conditional(double y2, double y1);
double conditional_inverse(double x2, double y1);

ConditionalCdf2D conditional_cdf();
Measure measure();

}  // namespace chelson

struct IdentityCheckReport {
  std::vector<Point> images;
  /// D*(images; mu) and D*(points; lambda).
  DiscrepancyResult transformed;
  DiscrepancyResult original;
  double difference = 0.0;
  bool discrepancy_identity_holds = false;

  Point corner;        // a
  Point tilde_corner;  // tilde_g_map(a)
  std::size_t images_in_box = 0;          // #{z_n in [0,a]}
  std::size_t points_in_tilde_box = 0;    // #{x_n in [0, tilde_g_map(a)]}
  bool counting_identity_holds = false;
  double measure_of_box = 0.0;            // mu([0,a])
  double lebesgue_of_tilde_box = 0.0;     // lambda([0, tilde_g_map(a)])
  bool measure_identity_holds = false;
};

/// Transforms `ps` sequentially, then compares both discrepancies and the counting and
/// measure identities at the corner `a`. All comparisons use tolerance 1e-10.
IdentityCheckReport chelson_identity_check(const PointSet& ps, const ConditionalCdf2D& cdf,
                                           const Measure& m, std::span<const double> a,
                                           const DiscrepancyOptions& options = {});

struct BoundarySample {
  std::string set;  // "A" image of [0,a] under tilde_g_map, "B" the box [0, tilde_g_map(a)]
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Upper boundary of {tilde_g_map(y) : y in [0,a]} sampled at `samples` values of y1,
/// followed by the outline of the box [0, tilde_g_map(a)].
std::vector<BoundarySample> image_boundary(const ConditionalCdf2D& cdf, std::span<const double> a,
                                           std::size_t samples);

}  // namespace qmk
