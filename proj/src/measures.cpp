#include "qmk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmk {

PointSet::PointSet(std::size_t dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ == 0) throw ValidationError("point set dimension must be positive");
  for (const auto& p : points_) require_unit_point(p, dimension_, "point");
}

void require_unit_point(std::span<const double> x, std::size_t dimension, const char* what) {
  if (x.size() != dimension) {
    std::ostringstream os;
    os << what << " has dimension " << x.size() << ", expected " << dimension;
    throw ValidationError(os.str());
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream os;
      os << what << " coordinate " << v << " outside [0,1]";
      throw ValidationError(os.str());
    }
  }
}

namespace {

bool all_at_point(std::span<const LimitSide> sides) {
  return std::all_of(sides.begin(), sides.end(), [](LimitSide s) { return s == LimitSide::AtPoint; });
}

LimitSide side_of(std::span<const LimitSide> sides, std::size_t s) {
  return sides.empty() ? LimitSide::AtPoint : sides[s];
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscreteSignedMeasure

DiscreteSignedMeasure::DiscreteSignedMeasure(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw ValidationError("measure dimension must be positive");
}

DiscreteSignedMeasure::DiscreteSignedMeasure(std::size_t dimension, std::vector<Atom> atoms)
    : DiscreteSignedMeasure(dimension) {
  for (const auto& a : atoms) {
    require_unit_point(a.location, dimension_, "atom location");
    if (!std::isfinite(a.weight)) throw ValidationError("atom weight must be finite");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  for (auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().location == a.location) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.weight == 0.0; });
}

double DiscreteSignedMeasure::mass() const {
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight;
  return total;
}

double DiscreteSignedMeasure::anchored(std::span<const double> a,
                                       std::span<const LimitSide> sides) const {
  if (a.size() != dimension_) throw ValidationError("anchored: dimension mismatch");
  double total = 0.0;
  for (const auto& atom : atoms_) {
    bool inside = true;
    for (std::size_t s = 0; s < dimension_ && inside; ++s) {
      inside = side_of(sides, s) == LimitSide::AtPoint ? atom.location[s] <= a[s]
                                                        : atom.location[s] < a[s];
    }
    if (inside) total += atom.weight;
  }
  return total;
}

std::pair<DiscreteSignedMeasure, DiscreteSignedMeasure> jordan_decompose_measure(
    const DiscreteSignedMeasure& nu) {
  std::vector<Atom> pos, neg;
  for (const auto& a : nu.atoms()) {
    if (a.weight > 0) {
      pos.push_back(a);
    } else {
      neg.push_back({a.location, -a.weight});
    }
  }
  return {DiscreteSignedMeasure(nu.dimension(), std::move(pos)),
          DiscreteSignedMeasure(nu.dimension(), std::move(neg))};
}

double total_variation(const DiscreteSignedMeasure& nu) {
  double total = 0.0;
  for (const auto& a : nu.atoms()) total += std::abs(a.weight);
  return total;
}

// ---------------------------------------------------------------------------
// AxisCdf

AxisCdf::AxisCdf(std::vector<double> breakpoints, std::vector<double> values,
                 std::vector<double> values_left)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)),
      values_left_(std::move(values_left)) {
  const std::size_t n = breakpoints_.size();
  if (n < 2) throw ValidationError("axis cdf needs at least the breakpoints 0 and 1");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    throw ValidationError("axis cdf breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw ValidationError("axis cdf breakpoints must be strictly increasing");
  }
  if (values_.size() != n) throw ValidationError("axis cdf: values size differs from breakpoints");
  if (values_left_.empty()) {
    values_left_ = values_;
    values_left_[0] = 0.0;
  }
  if (values_left_.size() != n)
    throw ValidationError("axis cdf: values_left size differs from breakpoints");
  if (values_left_[0] != 0.0) throw ValidationError("axis cdf: left limit at 0 must be 0");
  if (std::abs(values_.back() - 1.0) > kTolerance)
    throw ValidationError("axis cdf: value at 1 must equal 1");
  values_.back() = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0 && values_left_[i] >= 0.0 && values_left_[i] <= 1.0))
      throw ValidationError("axis cdf: values must lie in [0,1]");
    if (values_left_[i] > values_[i] + kTolerance)
      throw ValidationError("axis cdf: value-after must be >= value-before at each breakpoint");
    if (i + 1 < n && values_[i] > values_left_[i + 1] + kTolerance)
      throw ValidationError("axis cdf must be nondecreasing");
  }
}

AxisCdf AxisCdf::identity() { return AxisCdf({0.0, 1.0}, {0.0, 1.0}); }

std::size_t AxisCdf::segment(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

double AxisCdf::operator()(double x) const {
  if (x <= 0.0) return x < 0.0 ? 0.0 : values_.front();
  if (x >= 1.0) return 1.0;
  const std::size_t i = segment(x);
  if (x == breakpoints_[i]) return values_[i];
  const double t = (x - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  return values_[i] + t * (values_left_[i + 1] - values_[i]);
}

double AxisCdf::left_limit(double x) const {
  if (x <= 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  const std::size_t i = segment(x);
  if (x == breakpoints_[i]) return values_left_[i];
  return (*this)(x);
}

double AxisCdf::pseudo_inverse(double y) const {
  if (y <= values_.front()) return 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    // On (b_i, b_{i+1}) the CDF rises linearly from values_[i] to values_left_[i+1].
    if (values_left_[i + 1] >= y) {
      const double span = values_left_[i + 1] - values_[i];
      const double t = (y - values_[i]) / span;
      double x = breakpoints_[i] + t * (breakpoints_[i + 1] - breakpoints_[i]);
      return std::clamp(x, breakpoints_[i], breakpoints_[i + 1]);
    }
    if (values_[i + 1] >= y) return breakpoints_[i + 1];
  }
  return 1.0;
}

bool AxisCdf::strictly_increasing() const {
  if (values_.front() != 0.0) return false;
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (values_left_[i] != values_[i]) return false;
    if (!(values_left_[i] > values_[i - 1])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Measure

Measure Measure::uniform(std::size_t dimension) {
  if (dimension == 0) throw ValidationError("measure dimension must be positive");
  return Measure(UniformMeasure{dimension});
}

Measure Measure::discrete(DiscreteSignedMeasure nu) {
  for (const auto& a : nu.atoms()) {
    if (!(a.weight > 0)) throw ValidationError("discrete measure weights must be positive");
  }
  if (std::abs(nu.mass() - 1.0) > kTolerance)
    throw ValidationError("discrete measure must have total mass 1");
  return Measure(std::move(nu));
}

Measure Measure::product(std::vector<AxisCdf> axes) {
  if (axes.empty()) throw ValidationError("product measure needs at least one axis");
  return Measure(ProductMeasure{std::move(axes)});
}

Measure Measure::analytic(AnalyticCdf cdf) {
  if (cdf.dimension == 0) throw ValidationError("measure dimension must be positive");
  if (!cdf.cdf) throw ValidationError("analytic measure needs a cdf callback");
  const Point ones(cdf.dimension, 1.0);
  if (std::abs(cdf.cdf(ones) - 1.0) > kTolerance)
    throw ValidationError("analytic cdf must satisfy F(1,...,1) = 1");
  return Measure(std::move(cdf));
}

Measure Measure::empirical(const PointSet& ps) {
  if (ps.empty()) throw ValidationError("empirical measure of an empty point set");
  std::vector<Atom> atoms;
  atoms.reserve(ps.size());
  const double w = 1.0 / static_cast<double>(ps.size());
  for (const auto& p : ps) atoms.push_back({p, w});
  DiscreteSignedMeasure nu(ps.dimension(), std::move(atoms));
  return Measure(std::move(nu));
}

std::size_t Measure::dimension() const {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, UniformMeasure>) return r.dimension;
        else if constexpr (std::is_same_v<T, DiscreteSignedMeasure>) return r.dimension();
        else if constexpr (std::is_same_v<T, ProductMeasure>) return r.axes.size();
        else return r.dimension;
      },
      repr_);
}

std::string Measure::describe() const {
  switch (kind()) {
    case Kind::Uniform: return "uniform";
    case Kind::Discrete: return "discrete";
    case Kind::Product: return "product";
    case Kind::Analytic: {
      const auto& a = analytic_cdf();
      return a.name.empty() ? std::string("analytic") : a.name;
    }
  }
  return "unknown";
}

std::vector<double> Measure::critical_coordinates(std::size_t axis) const {
  std::vector<double> out;
  if (kind() == Kind::Discrete) {
    for (const auto& a : atoms().atoms()) out.push_back(a.location[axis]);
  } else if (kind() == Kind::Product) {
    out = product_axes().axes[axis].breakpoints();
  }
  return out;
}

bool Measure::continuous() const {
  switch (kind()) {
    case Kind::Uniform: return true;
    case Kind::Discrete: return atoms().empty();
    case Kind::Product:
      for (const auto& ax : product_axes().axes) {
        for (std::size_t i = 0; i < ax.values().size(); ++i) {
          if (ax.values()[i] != ax.values_left()[i]) return false;
        }
      }
      return true;
    case Kind::Analytic: return analytic_cdf().continuous;
  }
  return false;
}

double cdf_eval(const Measure& m, std::span<const double> a, std::span<const LimitSide> sides) {
  const std::size_t d = m.dimension();
  if (a.size() != d) throw ValidationError("cdf_eval: dimension mismatch");
  if (!sides.empty() && sides.size() != d) throw ValidationError("cdf_eval: limit flags mismatch");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, UniformMeasure>) {
          double v = 1.0;
          for (double x : a) v *= std::clamp(x, 0.0, 1.0);
          return v;
        } else if constexpr (std::is_same_v<T, DiscreteSignedMeasure>) {
          return r.anchored(a, sides);
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          double v = 1.0;
          for (std::size_t s = 0; s < d; ++s) v *= r.axes[s].eval(a[s], side_of(sides, s));
          return v;
        } else {
          if (r.continuous || all_at_point(sides)) return r.cdf(a);
          if (!r.limit_cdf)
            throw ValidationError("analytic cdf has no one-sided limit support");
          return r.limit_cdf(a, sides);
        }
      },
      m.repr_);
}

double box_measure(const Measure& m, std::span<const double> lower, std::span<const double> upper,
                   std::span<const BoxClosure> closure) {
  const std::size_t d = m.dimension();
  if (lower.size() != d || upper.size() != d) throw ValidationError("box_measure: dimension mismatch");
  if (!closure.empty() && closure.size() != d)
    throw ValidationError("box_measure: closure flags mismatch");
  for (std::size_t s = 0; s < d; ++s) {
    if (lower[s] > upper[s]) throw ValidationError("box_measure: lower corner exceeds upper corner");
    const BoxClosure c = closure.empty() ? BoxClosure{} : closure[s];
    if (lower[s] == upper[s] && !(c.lower_closed && c.upper_closed)) return 0.0;
  }

  Point corner(d);
  std::vector<LimitSide> sides(d);
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    bool vanishes = false;
    int sign = 1;
    for (std::size_t s = 0; s < d; ++s) {
      const BoxClosure c = closure.empty() ? BoxClosure{} : closure[s];
      if (mask & (std::size_t{1} << s)) {
        sign = -sign;
        corner[s] = lower[s];
        sides[s] = c.lower_closed ? LimitSide::LeftLimit : LimitSide::AtPoint;
        // Nothing lies strictly below 0.
        if (c.lower_closed && lower[s] == 0.0) vanishes = true;
      } else {
        corner[s] = upper[s];
        sides[s] = c.upper_closed ? LimitSide::AtPoint : LimitSide::LeftLimit;
      }
    }
    if (!vanishes) total += sign * cdf_eval(m, corner, sides);
  }
  return total;
}

}  // namespace qmk
