#pragma once

#include <cstddef>
#include <cstdint>

#include "qmk/types.hpp"

namespace qmk {

/// Radical inverse of n in the given base (digits of n mirrored about the radix point).
double van_der_corput(std::uint64_t n, unsigned base);

inline constexpr std::size_t kMaxHaltonDimension = 8;

/// Points n = 1..count of the Halton sequence in bases 2, 3, 5, 7, 11, 13, 17, 19.
PointSet halton(std::size_t count, std::size_t dimension);

}  // namespace qmk
