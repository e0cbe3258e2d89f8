#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmk {

using Point = std::vector<double>;

/// Comparison tolerance used for monotonicity checks and acceptance comparisons.
inline constexpr double kTolerance = 1e-12;

/// Input failed validation (wrong dimension, out-of-range coordinate, malformed data).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed axis-parallel box [lower, upper].
struct Box {
  Point lower;
  Point upper;
};

/// How a coordinate of an anchored corner is evaluated: at the point or as a left limit.
enum class LimitSide { AtPoint, LeftLimit };

/// N points in [0,1]^d.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dimension, std::vector<Point> points);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::size_t dimension_ = 0;
  std::vector<Point> points_;
};

void require_unit_point(std::span<const double> x, std::size_t dimension, const char* what);

}  // namespace qmk
