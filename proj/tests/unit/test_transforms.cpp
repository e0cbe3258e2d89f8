#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "qmk/sequences.hpp"
#include "qmk/transforms.hpp"

using namespace qmk;

namespace {

const Point kX{56.0 / 81.0, 20.0 / 23.0};
const Point kZ{7.0 / 9.0, 20.0 / 27.0};

}  // namespace

TEST_CASE("pseudo_inverse examples") {
  CHECK(pseudo_inverse(chelson::marginal, 56.0 / 81.0) == doctest::Approx(7.0 / 9.0).epsilon(1e-14));
  CHECK(chelson::marginal_inverse(56.0 / 81.0) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));

  const auto id = AxisCdf::identity();
  for (double y : {0.0, 0.1, 0.5, 0.999, 1.0}) CHECK(pseudo_inverse(id, y) == doctest::Approx(y).epsilon(1e-15));

  const AxisCdf step({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0}, {0.0, 0.0, 1.0});
  CHECK(pseudo_inverse(step, 0.3) == 0.5);
  CHECK(pseudo_inverse(step, 0.0) == 0.0);
  CHECK(pseudo_inverse(step, 1.0) == 0.5);

  const std::function<double(double)> dirac = [](double x) { return x >= 0.5 ? 1.0 : 0.0; };
  CHECK(pseudo_inverse(dirac, 0.3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pseudo_inverse(dirac, 0.0) == 0.0);
}

TEST_CASE("pseudo_inverse Galois property") {
  gen::Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = gen::axis_cdf(rng, static_cast<gen::AxisKind>(trial % 3));
    for (int k = 0; k < 30; ++k) {
      const double y = gen::uniform(rng);
      CHECK(g(pseudo_inverse(g, y)) >= y - 1e-14);
      const double x = gen::coordinate(rng);
      CHECK(pseudo_inverse(g, g(x)) <= x + 1e-14);

      const std::function<double(double)> cb = [&g](double t) { return g(t); };
      CHECK(cb(pseudo_inverse(cb, y)) >= y - 1e-14);
    }
  }
}

TEST_CASE("product_transform examples") {
  gen::Rng rng(89);
  const auto ps = gen::point_set(rng, 2, 10);
  const auto id = product_transform(ps, Measure::product({AxisCdf::identity(), AxisCdf::identity()}));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(id[i][0] == doctest::Approx(ps[i][0]).epsilon(1e-15));
    CHECK(id[i][1] == doctest::Approx(ps[i][1]).epsilon(1e-15));
  }

  // G(x) = x^2 on a fine piecewise-linear grid that is exact at 1/2.
  std::vector<double> b, v;
  for (int i = 0; i <= 8; ++i) {
    b.push_back(i / 8.0);
    v.push_back(b.back() * b.back());
  }
  const auto sq = Measure::product({AxisCdf(b, v)});
  const auto out = product_transform(PointSet(1, {{0.25}}), sq);
  CHECK(out[0][0] == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(product_transform(ps, Measure::uniform(2)).points() == ps.points());
  CHECK_THROWS_AS(product_transform(ps, chelson::measure()), ValidationError);
  CHECK_THROWS_AS(product_transform(ps, Measure::product({AxisCdf::identity()})), ValidationError);
}

TEST_CASE("product transform preserves or lowers the discrepancy") {
  gen::Rng rng(97);
  for (int trial = 0; trial < 90; ++trial) {
    const std::size_t d = gen::index(rng, 1, 3);
    const auto kind = static_cast<gen::AxisKind>(trial % 3);
    const auto m = gen::product_measure(rng, d, kind);
    const auto ps = trial % 2 ? gen::point_set(rng, d, gen::index(rng, 1, 64)) : halton(gen::index(rng, 1, 64), d);
    const double lhs = star_discrepancy(product_transform(ps, m), m).value;
    const double rhs = star_discrepancy(ps, Measure::uniform(d)).value;
    CHECK(lhs <= rhs + 1e-12);
    if (kind == gen::AxisKind::StrictlyIncreasing) CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("conditional_transform_2d examples") {
  const auto z = conditional_transform_2d(kX, chelson::conditional_cdf());
  CHECK(z[0] == doctest::Approx(kZ[0]).epsilon(1e-15));
  CHECK(z[1] == doctest::Approx(kZ[1]).epsilon(1e-15));
  CHECK(chelson::conditional(kZ[1], kZ[0]) == doctest::Approx(20.0 / 23.0).epsilon(1e-15));

  gen::Rng rng(101);
  const auto m = gen::product_measure(rng, 2, gen::AxisKind::StrictlyIncreasing);
  const auto prod = ConditionalCdf2D::from_product(m);
  const auto ps = gen::point_set(rng, 2, 30);
  const auto expected = product_transform(ps, m);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto p = conditional_transform_2d(ps[i], prod);
    CHECK(p[0] == doctest::Approx(expected[i][0]).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(expected[i][1]).epsilon(1e-14));
    const auto q = conditional_transform_2d(ps[i], ConditionalCdf2D::identity());
    CHECK(q[0] == doctest::Approx(ps[i][0]).epsilon(1e-15));
    CHECK(q[1] == doctest::Approx(ps[i][1]).epsilon(1e-15));
  }

  // A flat conditional without the positivity flag is rejected.
  auto flat = ConditionalCdf2D::identity();
  flat.conditional = [](double y2, double) { return y2 < 1.0 ? std::min(y2, 0.5) : 1.0; };
  flat.conditional_inverse = nullptr;
  flat.positive_density = false;
  CHECK_THROWS_AS(conditional_transform_2d(Point{0.3, 0.5}, flat), ValidationError);
}

TEST_CASE("tilde_g_map examples") {
  const auto cdf = chelson::conditional_cdf();
  const auto a = tilde_g_map(Point{1.0, 0.8}, cdf);
  CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(0.8).epsilon(1e-15));

  const auto x = tilde_g_map(kZ, cdf);
  CHECK(x[0] == doctest::Approx(kX[0]).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(kX[1]).epsilon(1e-15));

  const auto id = tilde_g_map(Point{0.3, 0.6}, ConditionalCdf2D::identity());
  CHECK(id == Point{0.3, 0.6});
  const auto idp = tilde_g_map(Point{0.3, 0.6, 0.9}, Measure::uniform(3));
  CHECK(idp == Point{0.3, 0.6, 0.9});
}

TEST_CASE("sequential transform followed by the conditional map is the identity") {
  gen::Rng rng(103);
  const auto cdf = chelson::conditional_cdf();
  for (int k = 0; k < 500; ++k) {
    const Point x = gen::point(rng, 2);
    const auto back = tilde_g_map(conditional_transform_2d(x, cdf), cdf);
    CHECK(back[0] == doctest::Approx(x[0]).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(x[1]).epsilon(1e-12));
  }
}

TEST_CASE("closed-form cdf matches quadrature of the density") {
  CHECK(chelson::cdf(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(chelson::cdf(1.0, 0.8) == doctest::Approx(22.0 / 25.0).epsilon(1e-15));
  CHECK(chelson::cdf(1.0, 20.0 / 27.0) == doctest::Approx(610.0 / 729.0).epsilon(1e-15));
  CHECK(oracle::diagonal_jump_quadrature(chelson::density, 0.0, 1.0, 0.0, 0.8) ==
        doctest::Approx(22.0 / 25.0).epsilon(1e-12));

  const auto m = chelson::measure();
  gen::Rng rng(107);
  for (int k = 0; k < 100; ++k) {
    Point lo = gen::point(rng, 2), hi = gen::point(rng, 2);
    for (std::size_t s = 0; s < 2; ++s) {
      if (lo[s] > hi[s]) std::swap(lo[s], hi[s]);
    }
    const double quad = oracle::diagonal_jump_quadrature(chelson::density, lo[0], hi[0], lo[1], hi[1]);
    CHECK(std::abs(box_measure(m, lo, hi) - quad) <= 1e-9);
  }
}

TEST_CASE("identity check on the counterexample") {
  const PointSet ps(2, {kX});
  const auto r = chelson_identity_check(ps, chelson::conditional_cdf(), chelson::measure(), Point{1.0, 0.8});
  REQUIRE(r.images.size() == 1);
  CHECK(r.images[0][0] == doctest::Approx(kZ[0]).epsilon(1e-15));
  CHECK(std::abs(r.transformed.value - 610.0 / 729.0) <= 1e-12);
  CHECK(std::abs(r.original.value - 20.0 / 23.0) <= 1e-12);
  CHECK_FALSE(r.discrepancy_identity_holds);
  CHECK(r.difference < 0.0);
  CHECK(r.measure_of_box == doctest::Approx(22.0 / 25.0).epsilon(1e-15));
  CHECK(r.lebesgue_of_tilde_box == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_FALSE(r.measure_identity_holds);
  // z lies in [0,a] but x lies outside [0, tilde_g_map(a)].
  CHECK(r.images_in_box == 1);
  CHECK(r.points_in_tilde_box == 0);
  CHECK_FALSE(r.counting_identity_holds);
}

TEST_CASE("identity check holds for product and uniform measures") {
  gen::Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = gen::product_measure(rng, 2, gen::AxisKind::StrictlyIncreasing);
    const auto ps = halton(gen::index(rng, 1, 32), 2);
    const auto r = chelson_identity_check(ps, ConditionalCdf2D::from_product(m), m, gen::point(rng, 2));
    CHECK(std::abs(r.difference) <= 1e-10);
    CHECK(r.discrepancy_identity_holds);
    CHECK(r.measure_identity_holds);
  }
  const auto ps = halton(16, 2);
  const auto r = chelson_identity_check(ps, ConditionalCdf2D::identity(), Measure::uniform(2), Point{0.5, 0.5});
  CHECK(r.difference == 0.0);
}

TEST_CASE("image boundary samples") {
  const auto cdf = chelson::conditional_cdf();
  const auto samples = image_boundary(cdf, Point{1.0, 0.8}, 11);
  REQUIRE(samples.size() == 14);
  CHECK(samples.front().set == "A");
  CHECK(samples.front().x1 == 0.0);
  CHECK(samples.front().x2 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(samples[10].x1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(samples[10].x2 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(samples.back().set == "B");
  CHECK_THROWS_AS(image_boundary(cdf, Point{1.0, 0.8}, 1), ValidationError);
}
