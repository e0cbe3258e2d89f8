#include "qmk/variation.hpp"

#include <algorithm>
#include <cmath>

namespace qmk {

namespace {

using Mask = std::size_t;

bool in_mask(Mask m, std::size_t s) { return (m >> s) & 1U; }

/// Mixed backward difference of f at vertex `flat` along the axes in `mask`:
/// sum over T subset of mask of (-1)^|T| f(v - e_T). Every axis in mask must have index >= 1.
double backward_difference(const GridFunction& f, std::size_t flat, Mask mask) {
  const std::size_t d = f.dimension();
  double total = 0.0;
  // Enumerate submasks T of mask.
  for (Mask t = mask;; t = (t - 1) & mask) {
    std::size_t k = flat;
    int sign = 1;
    for (std::size_t s = 0; s < d; ++s) {
      if (in_mask(t, s)) {
        k -= f.stride(s);
        sign = -sign;
      }
    }
    total += sign * f.at_flat(k);
    if (t == 0) break;
  }
  return total;
}

/// Calls visit(index) for every multi-index with lo[s] <= index[s] <= hi[s].
template <class Visit>
void for_each_index(std::span<const std::size_t> lo, std::span<const std::size_t> hi, Visit&& visit) {
  const std::size_t d = lo.size();
  for (std::size_t s = 0; s < d; ++s) {
    if (lo[s] > hi[s]) return;
  }
  std::vector<std::size_t> idx(lo.begin(), lo.end());
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t s = d;
    while (s-- > 0) {
      if (idx[s] < hi[s]) {
        ++idx[s];
        break;
      }
      idx[s] = lo[s];
    }
    if (s == static_cast<std::size_t>(-1)) return;
  }
}

struct IndexRegion {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;
};

IndexRegion region_indices(const GridFunction& f, const std::optional<Box>& region) {
  const std::size_t d = f.dimension();
  IndexRegion r{std::vector<std::size_t>(d, 0), std::vector<std::size_t>(d)};
  for (std::size_t s = 0; s < d; ++s) r.hi[s] = f.shape()[s] - 1;
  if (region) {
    if (region->lower.size() != d || region->upper.size() != d)
      throw ValidationError("region dimension mismatch");
    for (std::size_t s = 0; s < d; ++s) {
      r.lo[s] = f.grid_index(s, region->lower[s]);
      r.hi[s] = f.grid_index(s, region->upper[s]);
      if (r.lo[s] > r.hi[s]) throw ValidationError("region lower corner exceeds upper corner");
    }
  }
  return r;
}

double face_variation(const GridFunction& f, Mask axes, Anchor anchor, const IndexRegion& r) {
  const std::size_t d = f.dimension();
  std::vector<std::size_t> lo(d), hi(d);
  for (std::size_t s = 0; s < d; ++s) {
    if (in_mask(axes, s)) {
      // Cells are indexed by their upper vertex.
      lo[s] = r.lo[s] + 1;
      hi[s] = r.hi[s];
    } else {
      lo[s] = hi[s] = anchor == Anchor::One ? r.hi[s] : r.lo[s];
    }
  }
  double total = 0.0;
  for_each_index(lo, hi, [&](std::span<const std::size_t> idx) {
    total += std::abs(backward_difference(f, f.flat_index(idx), axes));
  });
  return total;
}

/// Signed atom at each vertex: the backward difference along the axes where the
/// vertex index is positive. Its prefix sum over [0,x] reproduces f(x).
std::vector<double> vertex_atoms(const GridFunction& f) {
  std::vector<double> atoms(f.vertex_count());
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto idx = f.multi_index(k);
    Mask support = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (idx[s] > 0) support |= Mask{1} << s;
    }
    atoms[k] = backward_difference(f, k, support);
  }
  return atoms;
}

/// In-place inclusive prefix sum along every axis.
void prefix_sum(const GridFunction& shape_of, std::vector<double>& a) {
  const std::size_t d = shape_of.dimension();
  for (std::size_t s = 0; s < d; ++s) {
    const std::size_t stride = shape_of.stride(s);
    const std::size_t n = shape_of.shape()[s];
    for (std::size_t k = 0; k < a.size(); ++k) {
      if ((k / stride) % n != 0) a[k] += a[k - stride];
    }
  }
}

}  // namespace

double quasi_volume(const GridFunction& f, const Box& box) {
  const std::size_t d = f.dimension();
  if (box.lower.size() != d || box.upper.size() != d) throw ValidationError("box dimension mismatch");
  std::vector<std::size_t> lo(d), hi(d);
  for (std::size_t s = 0; s < d; ++s) {
    lo[s] = f.grid_index(s, box.lower[s]);
    hi[s] = f.grid_index(s, box.upper[s]);
    if (lo[s] > hi[s]) throw ValidationError("box lower corner exceeds upper corner");
  }
  double total = 0.0;
  std::vector<std::size_t> corner(d);
  for (Mask j = 0; j < (Mask{1} << d); ++j) {
    int sign = 1;
    for (std::size_t s = 0; s < d; ++s) {
      if (in_mask(j, s)) {
        corner[s] = lo[s];
        sign = -sign;
      } else {
        corner[s] = hi[s];
      }
    }
    total += sign * f.at(corner);
  }
  return total;
}

double vitali_variation(const GridFunction& f, const std::optional<FaceSelector>& face,
                        const std::optional<Box>& region) {
  const std::size_t d = f.dimension();
  const IndexRegion r = region_indices(f, region);
  if (!face) return face_variation(f, (Mask{1} << d) - 1, Anchor::One, r);
  if (face->axes.empty()) throw ValidationError("face selector needs at least one axis");
  Mask axes = 0;
  for (std::size_t s : face->axes) {
    if (s >= d) throw ValidationError("face axis out of range");
    axes |= Mask{1} << s;
  }
  return face_variation(f, axes, face->anchor, r);
}

double hk_variation(const GridFunction& f, Anchor anchor) {
  const std::size_t d = f.dimension();
  const IndexRegion r = region_indices(f, std::nullopt);
  double total = 0.0;
  for (Mask axes = 1; axes < (Mask{1} << d); ++axes) total += face_variation(f, axes, anchor, r);
  return total;
}

std::vector<double> hk0_prefix_table(const GridFunction& f) {
  auto atoms = vertex_atoms(f);
  atoms[0] = 0.0;
  for (double& a : atoms) a = std::abs(a);
  prefix_sum(f, atoms);
  return atoms;
}

double hk0_prefix(const GridFunction& f, std::span<const double> x) {
  const std::size_t d = f.dimension();
  if (x.size() != d) throw ValidationError("hk0_prefix: dimension mismatch");
  std::vector<std::size_t> hi(d);
  for (std::size_t s = 0; s < d; ++s) hi[s] = f.grid_index(s, x[s]);
  Box sub{Point(d, 0.0), Point(x.begin(), x.end())};
  const IndexRegion r = region_indices(f, sub);
  double total = 0.0;
  for (Mask axes = 1; axes < (Mask{1} << d); ++axes) total += face_variation(f, axes, Anchor::Zero, r);
  return total;
}

LeonovPair leonov_decompose(const GridFunction& f) {
  auto increasing = hk0_prefix_table(f);
  std::vector<double> remainder(increasing.size());
  for (std::size_t k = 0; k < remainder.size(); ++k) remainder[k] = increasing[k] - f.at_flat(k);
  return {f.with_values(std::move(increasing)), f.with_values(std::move(remainder))};
}

JordanPair jordan_decompose_function(const GridFunction& f) {
  const auto variation = hk0_prefix_table(f);
  const double origin = f.at_flat(0);
  std::vector<double> pos(variation.size()), neg(variation.size());
  for (std::size_t k = 0; k < variation.size(); ++k) {
    const double rise = f.at_flat(k) - origin;
    pos[k] = 0.5 * (variation[k] + rise);
    neg[k] = 0.5 * (variation[k] - rise);
  }
  return {f.with_values(std::move(pos)), f.with_values(std::move(neg))};
}

bool is_completely_monotone(const GridFunction& f, double tolerance) {
  const std::size_t d = f.dimension();
  std::vector<std::size_t> lo(d), hi(d);
  for (Mask axes = 1; axes < (Mask{1} << d); ++axes) {
    for (std::size_t s = 0; s < d; ++s) {
      lo[s] = in_mask(axes, s) ? 1 : 0;
      hi[s] = f.shape()[s] - 1;
    }
    bool ok = true;
    for_each_index(lo, hi, [&](std::span<const std::size_t> idx) {
      if (ok && backward_difference(f, f.flat_index(idx), axes) < -tolerance) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

GridFunction mirror(const GridFunction& f) {
  const std::size_t d = f.dimension();
  std::vector<std::vector<double>> bps(d);
  for (std::size_t s = 0; s < d; ++s) {
    const auto& b = f.breakpoints(s);
    bps[s].resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bps[s][i] = 1.0 - b[b.size() - 1 - i];
    bps[s].front() = 0.0;
    bps[s].back() = 1.0;
  }
  std::vector<double> values(f.vertex_count());
  for (std::size_t k = 0; k < values.size(); ++k) {
    auto idx = f.multi_index(k);
    for (std::size_t s = 0; s < d; ++s) idx[s] = f.shape()[s] - 1 - idx[s];
    values[k] = f.at(idx);
  }
  Interp interp = f.interp();
  if (interp == Interp::RightContinuousStep) interp = Interp::LeftContinuousStep;
  else if (interp == Interp::LeftContinuousStep) interp = Interp::RightContinuousStep;
  return GridFunction(std::move(bps), std::move(values), interp);
}

GridFunction refine(const GridFunction& f, std::size_t axis, double x) {
  if (axis >= f.dimension()) throw ValidationError("refine: axis out of range");
  if (!(x > 0.0 && x < 1.0)) throw ValidationError("refine: breakpoint must lie in (0,1)");
  auto bps = f.breakpoints();
  auto& b = bps[axis];
  if (std::binary_search(b.begin(), b.end(), x)) return f;
  b.insert(std::upper_bound(b.begin(), b.end(), x), x);
  return GridFunction::sample(std::move(bps), [&](std::span<const double> p) { return f(p); },
                              f.interp());
}

DiscreteSignedMeasure function_to_measure(const GridFunction& f, double drop_tolerance) {
  if (f.interp() != Interp::RightContinuousStep)
    throw ValidationError("function_to_measure requires a right-continuous step function");
  const auto weights = vertex_atoms(f);
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (std::abs(weights[k]) > drop_tolerance) atoms.push_back({f.vertex(f.multi_index(k)), weights[k]});
  }
  return DiscreteSignedMeasure(f.dimension(), std::move(atoms));
}

GridFunction measure_to_function(const DiscreteSignedMeasure& nu) {
  const std::size_t d = nu.dimension();
  std::vector<std::vector<double>> bps(d, std::vector<double>{0.0, 1.0});
  for (const auto& a : nu.atoms()) {
    for (std::size_t s = 0; s < d; ++s) bps[s].push_back(a.location[s]);
  }
  for (auto& b : bps) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return GridFunction::sample(std::move(bps), [&](std::span<const double> x) { return nu.anchored(x); },
                              Interp::RightContinuousStep);
}

}  // namespace qmk
