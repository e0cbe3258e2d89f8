#pragma once

// Quasi-volumes, Vitali and Hardy-Krause variation of grid functions, complete
// monotonicity, the Leonov and Jordan decompositions, and the correspondence
// between right-continuous step functions and discrete signed measures.
//
// All variations are suprema over sub-partitions of the function's own grid. By
// refinement monotonicity they are attained on the finest grid, which makes them
// exact for the multilinear and step interpretations.

#include <optional>
#include <utility>
#include <vector>

#include "qmk/grid_function.hpp"
#include "qmk/measures.hpp"

namespace qmk {

enum class Anchor { One, Zero };

/// A face of the unit cube: the coordinates in `axes` vary, all others are pinned
/// to 1 (Anchor::One) or 0 (Anchor::Zero).
struct FaceSelector {
  std::vector<std::size_t> axes;
  Anchor anchor = Anchor::One;
};

struct JordanPair {
  GridFunction positive;
  GridFunction negative;
};

struct LeonovPair {
  GridFunction increasing;  // x -> V_HK0(f; [0,x])
  GridFunction remainder;   // increasing - f
};

/// Alternating 2^d-corner sum of f over a grid-aligned box.
double quasi_volume(const GridFunction& f, const Box& box);

/// Vitali variation of f, or of its restriction to `face`. With `region` given,
/// only grid cells inside that grid-aligned box are summed.
double vitali_variation(const GridFunction& f, const std::optional<FaceSelector>& face = std::nullopt,
                        const std::optional<Box>& region = std::nullopt);

/// Hardy-Krause variation: the sum of Vitali variations over the 2^d - 1 faces
/// adjacent to the anchor corner.
double hk_variation(const GridFunction& f, Anchor anchor);

/// V_HK0(f; [0,x]) for a grid vertex x, zero at the origin.
double hk0_prefix(const GridFunction& f, std::span<const double> x);

/// V_HK0(f; [0,x]) at every grid vertex, in row-major vertex order.
std::vector<double> hk0_prefix_table(const GridFunction& f);

LeonovPair leonov_decompose(const GridFunction& f);

/// f = f(0) + positive - negative with both parts completely monotone and zero at 0.
JordanPair jordan_decompose_function(const GridFunction& f);

/// Every quasi-volume of every dimension is >= -tolerance.
bool is_completely_monotone(const GridFunction& f, double tolerance = kTolerance);

/// g(x) = f(1 - x).
GridFunction mirror(const GridFunction& f);

/// Inserts a breakpoint on `axis`, filling new vertices from the interpretation.
GridFunction refine(const GridFunction& f, std::size_t axis, double x);

/// The signed measure nu with nu([0,x]) = f(x). Atoms sit at grid vertices and
/// carry the mixed backward difference of f (with zero padding below 0); atoms with
/// |weight| <= drop_tolerance are omitted. Requires Interp::RightContinuousStep.
DiscreteSignedMeasure function_to_measure(const GridFunction& f, double drop_tolerance = kTolerance);

/// The right-continuous step function x -> nu([0,x]) on the grid of atom coordinates plus {0,1}.
GridFunction measure_to_function(const DiscreteSignedMeasure& nu);

}  // namespace qmk
