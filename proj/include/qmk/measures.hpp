#pragma once

// Normalized and signed Borel measures on [0,1]^d and their anchored distribution
// functions F(a) = mu([0,a]).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmk/types.hpp"

namespace qmk {

struct Atom {
  Point location;
  double weight = 0.0;
};

/// Finite signed measure made of weighted point masses.
///
/// Atoms sharing a location are merged on construction and atoms whose merged
/// weight is exactly zero are dropped, so the atom list is canonical: sorted
/// lexicographically by location with pairwise distinct locations.
class DiscreteSignedMeasure {
 public:
  explicit DiscreteSignedMeasure(std::size_t dimension = 1);
  DiscreteSignedMeasure(std::size_t dimension, std::vector<Atom> atoms);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  /// Signed total mass, the sum of weights.
  double mass() const;

  /// nu([0,a]) with the given per-axis limit sides (LeftLimit counts only locations < a_s).
  double anchored(std::span<const double> a, std::span<const LimitSide> sides = {}) const;

 private:
  std::size_t dimension_;
  std::vector<Atom> atoms_;
};

/// Jordan decomposition nu = positive - negative with disjoint supports.
std::pair<DiscreteSignedMeasure, DiscreteSignedMeasure> jordan_decompose_measure(
    const DiscreteSignedMeasure& nu);

/// Sum of |weight| over the atoms.
double total_variation(const DiscreteSignedMeasure& nu);

/// One-dimensional distribution function on [0,1], piecewise linear between
/// breakpoints with possible jumps at breakpoints.
///
/// `values[i]` is G(b_i) (right-continuous value) and `values_left[i]` is the left
/// limit G(b_i^-). Between b_i and b_{i+1} the CDF is linear from values[i] to
/// values_left[i+1]. values_left[0] is the mass below 0, which is always 0.
class AxisCdf {
 public:
  AxisCdf(std::vector<double> breakpoints, std::vector<double> values,
          std::vector<double> values_left = {});

  static AxisCdf identity();

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& values_left() const { return values_left_; }

  double operator()(double x) const;
  double left_limit(double x) const;
  double eval(double x, LimitSide side) const {
    return side == LimitSide::AtPoint ? (*this)(x) : left_limit(x);
  }

  /// min{x in [0,1] : G(x) >= y}.
  double pseudo_inverse(double y) const;

  /// No jumps and no flat pieces, so G is a bijection of [0,1].
  bool strictly_increasing() const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> values_left_;
};

struct UniformMeasure {
  std::size_t dimension;
};

struct ProductMeasure {
  std::vector<AxisCdf> axes;
};

/// Closed-form anchored CDF. When `continuous` is false and a left limit is
/// requested, `limit_cdf` must be provided.
struct AnalyticCdf {
  using Cdf = std::function<double(std::span<const double>)>;
  using LimitCdf = std::function<double(std::span<const double>, std::span<const LimitSide>)>;

  std::size_t dimension = 0;
  Cdf cdf;
  bool continuous = true;
  LimitCdf limit_cdf;
  std::string name;
};

/// A normalized (probability) measure on [0,1]^d.
class Measure {
 public:
  enum class Kind { Uniform, Discrete, Product, Analytic };

  static Measure uniform(std::size_t dimension);
  /// Requires strictly positive weights summing to 1 (within kTolerance).
  static Measure discrete(DiscreteSignedMeasure nu);
  static Measure product(std::vector<AxisCdf> axes);
  static Measure analytic(AnalyticCdf cdf);

  /// Equal weights 1/N at the points of `ps` (duplicates merged).
  static Measure empirical(const PointSet& ps);

  Kind kind() const { return static_cast<Kind>(repr_.index()); }
  std::size_t dimension() const;
  std::string describe() const;

  const DiscreteSignedMeasure& atoms() const { return std::get<DiscreteSignedMeasure>(repr_); }
  const ProductMeasure& product_axes() const { return std::get<ProductMeasure>(repr_); }
  const AnalyticCdf& analytic_cdf() const { return std::get<AnalyticCdf>(repr_); }

  /// Coordinates along `axis` where the distribution function may jump or kink;
  /// discrepancy grids include them so that atoms never sit inside a cell.
  std::vector<double> critical_coordinates(std::size_t axis) const;

  /// True when F has no jumps, i.e. left limits equal point values.
  bool continuous() const;

 private:
  using Repr = std::variant<UniformMeasure, DiscreteSignedMeasure, ProductMeasure, AnalyticCdf>;
  explicit Measure(Repr r) : repr_(std::move(r)) {}
  friend double cdf_eval(const Measure&, std::span<const double>, std::span<const LimitSide>);

  Repr repr_;
};

/// mu([0,a]); with `sides` given, flagged axes use the left limit a_s^-.
double cdf_eval(const Measure& m, std::span<const double> a, std::span<const LimitSide> sides = {});

/// Per-axis closure of a box side.
struct BoxClosure {
  bool lower_closed = true;
  bool upper_closed = true;
};

/// mu of the box with the given per-axis closures, by inclusion-exclusion over
/// cdf_eval with one-sided limits. An empty `closure` means closed on every side.
double box_measure(const Measure& m, std::span<const double> lower, std::span<const double> upper,
                   std::span<const BoxClosure> closure = {});

}  // namespace qmk
