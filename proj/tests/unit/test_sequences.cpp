#include <doctest.h>

#include "generators.hpp"
#include "qmk/discrepancy.hpp"
#include "qmk/sequences.hpp"

using namespace qmk;

TEST_CASE("van_der_corput examples") {
  CHECK(van_der_corput(1, 2) == 0.5);
  CHECK(van_der_corput(3, 2) == 0.75);
  CHECK(van_der_corput(5, 3) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
  CHECK(van_der_corput(0, 5) == 0.0);
  CHECK_THROWS_AS(van_der_corput(1, 1), ValidationError);
  CHECK_THROWS_AS(van_der_corput(1, 0), ValidationError);
}

TEST_CASE("halton examples") {
  const auto one = halton(1, 2);
  REQUIRE(one.size() == 1);
  CHECK(one[0][0] == 0.5);
  CHECK(one[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK(star_discrepancy(halton(16, 1), Measure::uniform(1)).value <= 0.2);

  CHECK_THROWS_AS(halton(4, 9), ValidationError);
  CHECK_THROWS_AS(halton(4, 0), ValidationError);
}

TEST_CASE("halton points are in the open cube and index-stable") {
  const auto a = halton(200, kMaxHaltonDimension);
  const auto b = halton(50, kMaxHaltonDimension);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (double x : a[i]) {
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
    if (i < b.size()) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("halton beats pseudo-random points for most seeds") {
  const double h = star_discrepancy(halton(64, 2), Measure::uniform(2)).value;
  int wins = 0;
  const int seeds = 20;
  for (int seed = 0; seed < seeds; ++seed) {
    gen::Rng rng(static_cast<std::uint64_t>(seed));
    std::vector<Point> pts;
    for (int i = 0; i < 64; ++i) pts.push_back({gen::uniform(rng), gen::uniform(rng)});
    if (h < star_discrepancy(PointSet(2, std::move(pts)), Measure::uniform(2)).value) ++wins;
  }
  CHECK(wins > seeds / 2);
}

TEST_CASE("base-2 discrepancy does not increase along powers of two") {
  double previous = 1.0;
  for (int k = 0; k <= 10; ++k) {
    const double v = star_discrepancy(halton(std::size_t{1} << k, 1), Measure::uniform(1)).value;
    CHECK(v <= previous + 1e-15);
    previous = v;
  }
}
