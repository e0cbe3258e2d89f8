#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qmk/types.hpp"

namespace qmk {

/// How a GridFunction extends its vertex values to all of [0,1]^d.
enum class Interp {
  /// Multilinear interpolation inside each grid cell.
  Multilinear,
  /// Constant on half-open cells [b_i, b_{i+1}) with the value of the lower vertex.
  RightContinuousStep,
  /// Constant on (b_i, b_{i+1}] with the value of the upper vertex; f(0) at the origin faces.
  /// Indicators of closed anchored boxes [0,a] are of this kind.
  LeftContinuousStep,
};

/// Function on [0,1]^d given by per-axis breakpoints and values at every grid vertex.
///
/// Values are stored row-major: the last axis varies fastest.
class GridFunction {
 public:
  GridFunction(std::vector<std::vector<double>> breakpoints, std::vector<double> values,
               Interp interp = Interp::Multilinear);

  /// Samples `f` at every vertex of the tensor grid.
  static GridFunction sample(std::vector<std::vector<double>> breakpoints,
                             const std::function<double(std::span<const double>)>& f,
                             Interp interp = Interp::Multilinear);

  std::size_t dimension() const { return breakpoints_.size(); }
  const std::vector<std::vector<double>>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& breakpoints(std::size_t axis) const { return breakpoints_[axis]; }
  const std::vector<double>& values() const { return values_; }
  Interp interp() const { return interp_; }

  /// Number of breakpoints per axis.
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t vertex_count() const { return values_.size(); }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  double at(std::span<const std::size_t> index) const { return values_[flat_index(index)]; }
  double at_flat(std::size_t flat) const { return values_[flat]; }
  Point vertex(std::span<const std::size_t> index) const;

  /// Index of the breakpoint equal to x (within kTolerance); throws ValidationError when off-grid.
  std::size_t grid_index(std::size_t axis, double x) const;

  /// Value at an arbitrary point according to the interpretation.
  double operator()(std::span<const double> x) const;

  GridFunction with_values(std::vector<double> values) const {
    return GridFunction(breakpoints_, std::move(values), interp_);
  }

 private:
  std::vector<std::vector<double>> breakpoints_;
  std::vector<double> values_;
  Interp interp_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
};

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);

}  // namespace qmk
