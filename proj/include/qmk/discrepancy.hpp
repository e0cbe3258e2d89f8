#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qmk/measures.hpp"
#include "qmk/types.hpp"

namespace qmk {

struct DiscrepancyResult {
  enum class Method { ExactGrid, RandomSearch };

  double value = 0.0;
  /// Anchored witness box [0, a].
  Box witness_box;
  /// Per-axis evaluation of the witness corner; LeftLimit axes are approached from below.
  std::vector<LimitSide> witness_sides;
  /// True when some box [0,a] attains the value; false when it is only a one-sided limit.
  bool attained = true;
  Method method = Method::ExactGrid;
};

struct DiscrepancyOptions {
  std::size_t max_dimension = 4;
  /// Maximum number of critical-grid cells.
  double cell_budget = 1e8;
  /// Worker threads for the cell sweep; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// |#{x_n <= a}/N - F(a)| where F uses left limits on the flagged axes. The count
/// always uses the closed box.
double local_discrepancy(std::span<const double> a, const PointSet& ps, const Measure& m,
                         std::span<const LimitSide> sides = {});

/// The limit of the local discrepancy as the corner approaches `a` from below on the
/// flagged axes: both the count and F use strict inequality there.
double limit_discrepancy(std::span<const double> a, const PointSet& ps, const Measure& m,
                         std::span<const LimitSide> sides);

/// Re-evaluates a result's witness: local_discrepancy when attained, limit_discrepancy otherwise.
double witness_value(const DiscrepancyResult& r, const PointSet& ps, const Measure& m);

/// Exact star-discrepancy sup over anchored closed boxes, by sweeping the cells of
/// the critical grid. Throws BudgetExceeded when d or the cell count exceeds the options.
DiscrepancyResult star_discrepancy(const PointSet& ps, const Measure& m,
                                   const DiscrepancyOptions& options = {});

/// Number of cells the exact sweep would visit.
double critical_cell_count(const PointSet& ps, const Measure& m);

/// Lower bound from random and point-snapped corners with random limit sides.
DiscrepancyResult random_search_lower_bound(const PointSet& ps, const Measure& m,
                                            std::size_t trials, std::uint64_t seed);

}  // namespace qmk
