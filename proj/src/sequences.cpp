#include "qmk/sequences.hpp"

#include <array>

namespace qmk {

namespace {
constexpr std::array<unsigned, kMaxHaltonDimension> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19};
}

double van_der_corput(std::uint64_t n, unsigned base) {
  if (base < 2) throw ValidationError("van der Corput base must be at least 2");
  double result = 0.0;
  double scale = 1.0 / base;
  while (n > 0) {
    result += static_cast<double>(n % base) * scale;
    n /= base;
    scale /= base;
  }
  return result;
}

PointSet halton(std::size_t count, std::size_t dimension) {
  if (dimension == 0 || dimension > kMaxHaltonDimension)
    throw ValidationError("halton dimension must be between 1 and 8");
  if (count == 0) throw ValidationError("halton needs at least one point");
  std::vector<Point> points(count, Point(dimension));
  for (std::size_t n = 1; n <= count; ++n) {
    for (std::size_t s = 0; s < dimension; ++s) points[n - 1][s] = van_der_corput(n, kPrimes[s]);
  }
  return PointSet(dimension, std::move(points));
}

}  // namespace qmk
