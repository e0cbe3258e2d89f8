#include "qmk/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmk {

GridFunction::GridFunction(std::vector<std::vector<double>> breakpoints, std::vector<double> values,
                           Interp interp)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), interp_(interp) {
  const std::size_t d = breakpoints_.size();
  if (d == 0) throw ValidationError("grid function needs at least one axis");
  shape_.resize(d);
  strides_.resize(d);
  std::size_t total = 1;
  for (std::size_t s = 0; s < d; ++s) {
    const auto& b = breakpoints_[s];
    if (b.size() < 2 || b.front() != 0.0 || b.back() != 1.0) {
      std::ostringstream os;
      os << "breakpoints of axis " << s << " must start at 0 and end at 1";
      throw ValidationError(os.str());
    }
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (!(b[i] > b[i - 1])) {
        std::ostringstream os;
        os << "breakpoints of axis " << s << " must be strictly increasing";
        throw ValidationError(os.str());
      }
    }
    shape_[s] = b.size();
    total *= b.size();
  }
  std::size_t stride = 1;
  for (std::size_t s = d; s-- > 0;) {
    strides_[s] = stride;
    stride *= shape_[s];
  }
  if (values_.size() != total) {
    std::ostringstream os;
    os << "grid function has " << values_.size() << " values, expected " << total;
    throw ValidationError(os.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("grid function values must be finite");
  }
}

GridFunction GridFunction::sample(std::vector<std::vector<double>> breakpoints,
                                  const std::function<double(std::span<const double>)>& f,
                                  Interp interp) {
  std::size_t total = 1;
  for (const auto& b : breakpoints) total *= b.size();
  GridFunction g(breakpoints, std::vector<double>(total, 0.0), interp);
  std::vector<double> values(total);
  for (std::size_t k = 0; k < total; ++k) {
    const auto idx = g.multi_index(k);
    values[k] = f(g.vertex(idx));
  }
  return g.with_values(std::move(values));
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> index) const {
  std::size_t k = 0;
  for (std::size_t s = 0; s < index.size(); ++s) k += index[s] * strides_[s];
  return k;
}

std::vector<std::size_t> GridFunction::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(dimension());
  for (std::size_t s = 0; s < idx.size(); ++s) {
    idx[s] = flat / strides_[s];
    flat %= strides_[s];
  }
  return idx;
}

Point GridFunction::vertex(std::span<const std::size_t> index) const {
  Point x(dimension());
  for (std::size_t s = 0; s < x.size(); ++s) x[s] = breakpoints_[s][index[s]];
  return x;
}

std::size_t GridFunction::grid_index(std::size_t axis, double x) const {
  const auto& b = breakpoints_[axis];
  auto it = std::lower_bound(b.begin(), b.end(), x - kTolerance);
  if (it == b.end() || std::abs(*it - x) > kTolerance) {
    std::ostringstream os;
    os << "coordinate " << x << " is not a breakpoint of axis " << axis;
    throw ValidationError(os.str());
  }
  return static_cast<std::size_t>(it - b.begin());
}

double GridFunction::operator()(std::span<const double> x) const {
  const std::size_t d = dimension();
  require_unit_point(x, d, "evaluation point");
  std::vector<std::size_t> idx(d);
  if (interp_ != Interp::Multilinear) {
    for (std::size_t s = 0; s < d; ++s) {
      const auto& b = breakpoints_[s];
      if (interp_ == Interp::RightContinuousStep) {
        idx[s] = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), x[s]) - b.begin()) - 1;
      } else {
        idx[s] = static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), x[s]) - b.begin());
      }
    }
    return at(idx);
  }

  std::vector<double> t(d);
  for (std::size_t s = 0; s < d; ++s) {
    const auto& b = breakpoints_[s];
    std::size_t i = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), x[s]) - b.begin()) - 1;
    i = std::min(i, b.size() - 2);
    idx[s] = i;
    t[s] = (x[s] - b[i]) / (b[i + 1] - b[i]);
  }
  double total = 0.0;
  std::vector<std::size_t> corner(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    double w = 1.0;
    for (std::size_t s = 0; s < d; ++s) {
      const bool up = mask & (std::size_t{1} << s);
      corner[s] = idx[s] + (up ? 1 : 0);
      w *= up ? t[s] : 1.0 - t[s];
    }
    if (w != 0.0) total += w * at(corner);
  }
  return total;
}

namespace {

GridFunction combine(const GridFunction& f, const GridFunction& g, double sign) {
  if (f.breakpoints() != g.breakpoints() || f.interp() != g.interp())
    throw ValidationError("grid functions must share breakpoints and interpretation");
  std::vector<double> v(f.values());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += sign * g.at_flat(k);
  return f.with_values(std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) { return combine(f, g, 1.0); }
GridFunction operator-(const GridFunction& f, const GridFunction& g) { return combine(f, g, -1.0); }

}  // namespace qmk
