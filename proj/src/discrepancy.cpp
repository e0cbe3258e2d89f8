#include "qmk/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace qmk {

namespace {

void check_inputs(const PointSet& ps, const Measure& m) {
  if (ps.empty()) throw ValidationError("point set is empty");
  if (ps.dimension() != m.dimension()) {
    std::ostringstream os;
    os << "point set dimension " << ps.dimension() << " differs from measure dimension " << m.dimension();
    throw ValidationError(os.str());
  }
}

std::size_t count_below(std::span<const double> a, const PointSet& ps, std::span<const LimitSide> sides) {
  std::size_t count = 0;
  for (const auto& x : ps) {
    bool inside = true;
    for (std::size_t s = 0; s < a.size() && inside; ++s) {
      const bool strict = !sides.empty() && sides[s] == LimitSide::LeftLimit;
      inside = strict ? x[s] < a[s] : x[s] <= a[s];
    }
    if (inside) ++count;
  }
  return count;
}

/// Sorted distinct coordinates of the critical grid along each axis.
std::vector<std::vector<double>> critical_grid(const PointSet& ps, const Measure& m) {
  const std::size_t d = ps.dimension();
  std::vector<std::vector<double>> grid(d, std::vector<double>{0.0, 1.0});
  for (const auto& x : ps) {
    for (std::size_t s = 0; s < d; ++s) grid[s].push_back(x[s]);
  }
  for (std::size_t s = 0; s < d; ++s) {
    for (double c : m.critical_coordinates(s)) grid[s].push_back(c);
    std::sort(grid[s].begin(), grid[s].end());
    grid[s].erase(std::unique(grid[s].begin(), grid[s].end()), grid[s].end());
  }
  return grid;
}

struct Candidate {
  double value = -1.0;
  std::size_t cell = 0;
  bool upper = false;

  // Larger value wins; ties prefer attained (lower-corner) candidates, then the first cell.
  bool better_than(const Candidate& o) const {
    if (value != o.value) return value > o.value;
    if (upper != o.upper) return !upper;
    return cell < o.cell;
  }
};

/// Cell sweep over the critical grid. Cell i (multi-index) is [g_i, g_{i+1}) per axis,
/// or the single coordinate {1} for the last index. The count is constant on a cell and
/// F is monotone, so the supremum over the cell is reached at the lower corner or as
/// the left limit at the upper corner.
class CellSweep {
 public:
  CellSweep(const PointSet& ps, const Measure& m, std::vector<std::vector<double>> grid)
      : ps_(ps), m_(m), grid_(std::move(grid)), d_(grid_.size()) {
    shape_.resize(d_);
    strides_.resize(d_);
    std::size_t stride = 1;
    for (std::size_t s = d_; s-- > 0;) {
      shape_[s] = grid_[s].size();
      strides_[s] = stride;
      stride *= shape_[s];
    }
    cells_ = stride;
    counts_ = prefix_histogram(ps_.points(), std::vector<double>(ps_.size(), 1.0));

    if (m_.kind() == Measure::Kind::Discrete) {
      std::vector<Point> locs;
      std::vector<double> weights;
      for (const auto& a : m_.atoms().atoms()) {
        locs.push_back(a.location);
        weights.push_back(a.weight);
      }
      atom_mass_ = prefix_histogram(locs, weights);
    } else if (m_.kind() == Measure::Kind::Uniform || m_.kind() == Measure::Kind::Product) {
      lower_axis_.resize(d_);
      upper_axis_.resize(d_);
      for (std::size_t s = 0; s < d_; ++s) {
        const auto& g = grid_[s];
        for (std::size_t i = 0; i < g.size(); ++i) {
          const bool last = i + 1 == g.size();
          if (m_.kind() == Measure::Kind::Uniform) {
            lower_axis_[s].push_back(g[i]);
            upper_axis_[s].push_back(last ? 1.0 : g[i + 1]);
          } else {
            const auto& axis = m_.product_axes().axes[s];
            lower_axis_[s].push_back(axis(g[i]));
            upper_axis_[s].push_back(last ? 1.0 : axis.left_limit(g[i + 1]));
          }
        }
      }
    }
  }

  std::size_t cells() const { return cells_; }

  Candidate sweep(std::size_t begin, std::size_t end) const {
    Candidate best;
    if (begin >= end) return best;
    std::vector<std::size_t> idx(d_);
    std::size_t rest = begin;
    for (std::size_t s = 0; s < d_; ++s) {
      idx[s] = rest / strides_[s];
      rest %= strides_[s];
    }
    const double n = static_cast<double>(ps_.size());
    Point lo(d_), hi(d_);
    std::vector<LimitSide> sides(d_);
    for (std::size_t cell = begin; cell < end; ++cell) {
      const double frac = counts_[cell] / n;
      double f_lo = 0.0;
      double f_hi = 0.0;
      switch (m_.kind()) {
        case Measure::Kind::Discrete:
          f_lo = f_hi = atom_mass_[cell];
          break;
        case Measure::Kind::Uniform:
        case Measure::Kind::Product:
          f_lo = f_hi = 1.0;
          for (std::size_t s = 0; s < d_; ++s) {
            f_lo *= lower_axis_[s][idx[s]];
            f_hi *= upper_axis_[s][idx[s]];
          }
          break;
        case Measure::Kind::Analytic:
          corners(idx, lo, hi, sides);
          f_lo = cdf_eval(m_, lo);
          f_hi = cdf_eval(m_, hi, sides);
          break;
      }
      const Candidate at_lower{std::abs(frac - f_lo), cell, false};
      if (at_lower.better_than(best)) best = at_lower;
      const Candidate at_upper{std::abs(frac - f_hi), cell, true};
      if (at_upper.better_than(best)) best = at_upper;

      for (std::size_t s = d_; s-- > 0;) {
        if (++idx[s] < shape_[s]) break;
        idx[s] = 0;
      }
    }
    return best;
  }

  DiscrepancyResult result(const Candidate& c) const {
    DiscrepancyResult r;
    r.method = DiscrepancyResult::Method::ExactGrid;
    r.value = std::clamp(c.value, 0.0, 1.0);
    std::vector<std::size_t> idx(d_);
    std::size_t rest = c.cell;
    for (std::size_t s = 0; s < d_; ++s) {
      idx[s] = rest / strides_[s];
      rest %= strides_[s];
    }
    Point lo(d_), hi(d_);
    std::vector<LimitSide> sides(d_);
    corners(idx, lo, hi, sides);
    r.witness_box.lower = Point(d_, 0.0);
    if (c.upper) {
      r.witness_box.upper = hi;
      r.witness_sides = sides;
    } else {
      r.witness_box.upper = lo;
      r.witness_sides.assign(d_, LimitSide::AtPoint);
    }
    r.attained = std::all_of(r.witness_sides.begin(), r.witness_sides.end(),
                             [](LimitSide s) { return s == LimitSide::AtPoint; });
    return r;
  }

 private:
  void corners(std::span<const std::size_t> idx, Point& lo, Point& hi, std::vector<LimitSide>& sides) const {
    for (std::size_t s = 0; s < d_; ++s) {
      const auto& g = grid_[s];
      lo[s] = g[idx[s]];
      const bool last = idx[s] + 1 == g.size();
      hi[s] = last ? 1.0 : g[idx[s] + 1];
      sides[s] = last ? LimitSide::AtPoint : LimitSide::LeftLimit;
    }
  }

  /// Weighted histogram on grid vertices, prefix-summed so entry k is the mass of [0, g_k].
  std::vector<double> prefix_histogram(const std::vector<Point>& pts, const std::vector<double>& w) const {
    std::vector<double> h(cells_, 0.0);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      std::size_t k = 0;
      for (std::size_t s = 0; s < d_; ++s) {
        const auto& g = grid_[s];
        const auto i = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), pts[p][s]) - g.begin());
        k += i * strides_[s];
      }
      h[k] += w[p];
    }
    for (std::size_t s = 0; s < d_; ++s) {
      for (std::size_t k = 0; k < cells_; ++k) {
        if ((k / strides_[s]) % shape_[s] != 0) h[k] += h[k - strides_[s]];
      }
    }
    return h;
  }

  const PointSet& ps_;
  const Measure& m_;
  std::vector<std::vector<double>> grid_;
  std::size_t d_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 0;
  std::vector<double> counts_;
  std::vector<double> atom_mass_;
  std::vector<std::vector<double>> lower_axis_;
  std::vector<std::vector<double>> upper_axis_;
};

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double local_discrepancy(std::span<const double> a, const PointSet& ps, const Measure& m,
                         std::span<const LimitSide> sides) {
  check_inputs(ps, m);
  require_unit_point(a, ps.dimension(), "corner");
  const double frac = static_cast<double>(count_below(a, ps, {})) / static_cast<double>(ps.size());
  return std::abs(frac - cdf_eval(m, a, sides));
}

double limit_discrepancy(std::span<const double> a, const PointSet& ps, const Measure& m,
                         std::span<const LimitSide> sides) {
  check_inputs(ps, m);
  require_unit_point(a, ps.dimension(), "corner");
  if (sides.size() != a.size()) throw ValidationError("limit flags dimension mismatch");
  const double frac = static_cast<double>(count_below(a, ps, sides)) / static_cast<double>(ps.size());
  return std::abs(frac - cdf_eval(m, a, sides));
}

double witness_value(const DiscrepancyResult& r, const PointSet& ps, const Measure& m) {
  if (r.attained) return local_discrepancy(r.witness_box.upper, ps, m);
  return limit_discrepancy(r.witness_box.upper, ps, m, r.witness_sides);
}

double critical_cell_count(const PointSet& ps, const Measure& m) {
  check_inputs(ps, m);
  double cells = 1.0;
  for (const auto& g : critical_grid(ps, m)) cells *= static_cast<double>(g.size());
  return cells;
}

DiscrepancyResult star_discrepancy(const PointSet& ps, const Measure& m, const DiscrepancyOptions& options) {
  check_inputs(ps, m);
  if (ps.dimension() > options.max_dimension) {
    std::ostringstream os;
    os << "exact discrepancy limited to d <= " << options.max_dimension << " (got " << ps.dimension() << ")";
    throw BudgetExceeded(os.str());
  }
  auto grid = critical_grid(ps, m);
  double cells = 1.0;
  for (const auto& g : grid) cells *= static_cast<double>(g.size());
  if (cells > options.cell_budget) {
    std::ostringstream os;
    os << "critical grid has " << cells << " cells, budget is " << options.cell_budget;
    throw BudgetExceeded(os.str());
  }

  const CellSweep sweep(ps, m, std::move(grid));
  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  if (sweep.cells() < (std::size_t{1} << 15)) threads = 1;

  Candidate best;
  if (threads == 1) {
    best = sweep.sweep(0, sweep.cells());
  } else {
    std::vector<Candidate> partial(threads);
    {
      std::vector<std::jthread> workers;
      const std::size_t chunk = (sweep.cells() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(sweep.cells(), t * chunk);
        const std::size_t end = std::min(sweep.cells(), begin + chunk);
        workers.emplace_back([&, t, begin, end] { partial[t] = sweep.sweep(begin, end); });
      }
    }
    for (const auto& c : partial) {
      if (c.better_than(best)) best = c;
    }
  }
  return sweep.result(best);
}

DiscrepancyResult random_search_lower_bound(const PointSet& ps, const Measure& m, std::size_t trials,
                                            std::uint64_t seed) {
  check_inputs(ps, m);
  if (trials == 0) throw ValidationError("random search needs at least one trial");
  const std::size_t d = ps.dimension();
  std::mt19937_64 rng(seed);

  DiscrepancyResult best;
  best.method = DiscrepancyResult::Method::RandomSearch;
  best.value = -1.0;
  Point a(d);
  std::vector<LimitSide> sides(d);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t s = 0; s < d; ++s) {
      switch (rng() % 3) {
        case 0: a[s] = unit_double(rng); break;
        case 1: a[s] = ps[rng() % ps.size()][s]; break;
        default: a[s] = 1.0; break;
      }
      sides[s] = (rng() & 1U) && a[s] > 0.0 ? LimitSide::LeftLimit : LimitSide::AtPoint;
    }
    const double v = limit_discrepancy(a, ps, m, sides);
    if (v > best.value) {
      best.value = v;
      best.witness_box = {Point(d, 0.0), a};
      best.witness_sides = sides;
    }
  }
  best.attained = std::all_of(best.witness_sides.begin(), best.witness_sides.end(),
                              [](LimitSide s) { return s == LimitSide::AtPoint; });
  return best;
}

}  // namespace qmk
