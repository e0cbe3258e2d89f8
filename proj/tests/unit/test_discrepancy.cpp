#include <doctest.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "qmk/discrepancy.hpp"
#include "qmk/transforms.hpp"

using namespace qmk;

namespace {

using LeftFlags = std::span<const bool>;

double lebesgue(std::span<const double> a, LeftFlags) {
  double v = 1.0;
  for (double x : a) v *= x;
  return v;
}

std::function<double(std::span<const double>, LeftFlags)> atom_cdf(const DiscreteSignedMeasure& nu) {
  return [&nu](std::span<const double> a, LeftFlags left) {
    double v = 0.0;
    for (const auto& atom : nu.atoms()) {
      bool in = true;
      for (std::size_t s = 0; s < a.size() && in; ++s) {
        in = left[s] ? atom.location[s] < a[s] : atom.location[s] <= a[s];
      }
      if (in) v += atom.weight;
    }
    return v;
  };
}

std::function<double(std::span<const double>, LeftFlags)> axis_product_cdf(const Measure& m) {
  return [&m](std::span<const double> a, LeftFlags left) {
    double v = 1.0;
    for (std::size_t s = 0; s < a.size(); ++s) {
      const auto& g = m.product_axes().axes[s];
      v *= left[s] ? g.left_limit(a[s]) : g(a[s]);
    }
    return v;
  };
}

/// Per-axis candidates: {0, 1} with every coordinate of the points and `extra`.
std::vector<std::vector<double>> candidates(const PointSet& ps, const Measure& m) {
  std::vector<std::vector<double>> c;
  for (std::size_t s = 0; s < ps.dimension(); ++s) {
    std::set<double> axis{0.0, 1.0};
    for (const auto& p : ps.points()) axis.insert(p[s]);
    for (double x : m.critical_coordinates(s)) axis.insert(x);
    c.emplace_back(axis.begin(), axis.end());
  }
  return c;
}

std::vector<std::vector<double>> raw(const PointSet& ps) {
  return {ps.points().begin(), ps.points().end()};
}

Measure analytic_uniform(std::size_t d) {
  AnalyticCdf a;
  a.dimension = d;
  a.cdf = [](std::span<const double> x) {
    double v = 1.0;
    for (double t : x) v *= t;
    return v;
  };
  a.continuous = true;
  a.name = "lebesgue";
  return Measure::analytic(std::move(a));
}

const double k2023 = 20.0 / 23.0;

}  // namespace

TEST_CASE("local_discrepancy examples") {
  const PointSet half(1, {{0.5}});
  CHECK(local_discrepancy(Point{0.5}, half, Measure::uniform(1)) == 0.5);

  const PointSet z(2, {{7.0 / 9.0, 20.0 / 27.0}});
  CHECK(local_discrepancy(Point{1.0, 20.0 / 27.0}, z, chelson::measure()) ==
        doctest::Approx(119.0 / 729.0).epsilon(1e-15));

  gen::Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ps = gen::point_set(rng, gen::index(rng, 1, 3), gen::index(rng, 1, 10));
    const auto m = Measure::empirical(ps);
    for (int k = 0; k < 10; ++k) {
      CHECK(local_discrepancy(gen::point(rng, ps.dimension()), ps, m) == doctest::Approx(0.0).epsilon(1e-15));
    }
  }

  CHECK_THROWS_AS(local_discrepancy(Point{0.5, 0.5}, half, Measure::uniform(1)), ValidationError);
  CHECK_THROWS_AS(local_discrepancy(Point{0.5}, half, Measure::uniform(2)), ValidationError);
}

TEST_CASE("star_discrepancy: unattained uniform supremum") {
  const PointSet x(2, {{56.0 / 81.0, k2023}});
  const auto r = star_discrepancy(x, Measure::uniform(2));
  CHECK(r.value == doctest::Approx(k2023).epsilon(1e-15));
  CHECK(std::abs(r.value - k2023) <= 1e-12);
  CHECK_FALSE(r.attained);
  CHECK(r.method == DiscrepancyResult::Method::ExactGrid);
  CHECK(r.witness_box.upper == Point{1.0, k2023});
  REQUIRE(r.witness_sides.size() == 2);
  CHECK(r.witness_sides[1] == LimitSide::LeftLimit);
  CHECK(witness_value(r, x, Measure::uniform(2)) == doctest::Approx(r.value).epsilon(1e-15));
}

TEST_CASE("star_discrepancy: non-product measure") {
  const PointSet z(2, {{7.0 / 9.0, 20.0 / 27.0}});
  const auto r = star_discrepancy(z, chelson::measure());
  CHECK(std::abs(r.value - 610.0 / 729.0) <= 1e-12);
  CHECK(std::abs(witness_value(r, z, chelson::measure()) - r.value) <= 1e-12);
}

TEST_CASE("star_discrepancy: one dimension against a dense grid") {
  const PointSet ps(1, {{0.25}, {0.75}});
  std::vector<double> dense(100001);
  for (std::size_t i = 0; i < dense.size(); ++i) dense[i] = static_cast<double>(i) / 100000.0;
  const double brute = oracle::dense_grid_discrepancy(raw(ps), {dense}, lebesgue);
  CHECK(brute == doctest::Approx(0.25).epsilon(1e-15));
  const auto r = star_discrepancy(ps, Measure::uniform(1));
  CHECK(r.value == doctest::Approx(brute).epsilon(1e-15));
  CHECK(r.attained);
}

TEST_CASE("star_discrepancy: single point at 1") {
  const PointSet ps(1, {{1.0}});
  const auto r = star_discrepancy(ps, Measure::uniform(1));
  CHECK(r.value == 1.0);
  CHECK_FALSE(r.attained);
  CHECK(r.witness_sides == std::vector<LimitSide>{LimitSide::LeftLimit});
}

TEST_CASE("star_discrepancy against the candidate-corner oracle") {
  gen::Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = gen::index(rng, 1, 3);
    const auto ps = gen::point_set(rng, d, gen::index(rng, 1, 8));
    double exact = 0.0, brute = 0.0;
    Measure m = Measure::uniform(d);
    switch (trial % 3) {
      case 0:
        exact = star_discrepancy(ps, m).value;
        brute = oracle::dense_grid_discrepancy(raw(ps), candidates(ps, m), lebesgue);
        break;
      case 1: {
        m = gen::probability_measure(rng, d, 6);
        exact = star_discrepancy(ps, m).value;
        brute = oracle::dense_grid_discrepancy(raw(ps), candidates(ps, m), atom_cdf(m.atoms()));
        break;
      }
      default:
        m = gen::product_measure(rng, d, static_cast<gen::AxisKind>(rng() % 3));
        exact = star_discrepancy(ps, m).value;
        brute = oracle::dense_grid_discrepancy(raw(ps), candidates(ps, m), axis_product_cdf(m));
        break;
    }
    CHECK(exact == doctest::Approx(brute).epsilon(1e-12));
    const auto r = star_discrepancy(ps, m);
    CHECK(r.value >= 0.0);
    CHECK(r.value <= 1.0 + 1e-12);
    CHECK(std::abs(witness_value(r, ps, m) - r.value) <= 1e-12);
  }
}

TEST_CASE("empirical measure of the point set gives zero") {
  gen::Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ps = gen::point_set(rng, gen::index(rng, 1, 3), gen::index(rng, 1, 12));
    CHECK(star_discrepancy(ps, Measure::empirical(ps)).value == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("duplicating every point leaves the discrepancy unchanged") {
  gen::Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = gen::index(rng, 1, 3);
    const auto ps = gen::point_set(rng, d, gen::index(rng, 1, 10));
    std::vector<Point> doubled(ps.points().begin(), ps.points().end());
    doubled.insert(doubled.end(), ps.points().begin(), ps.points().end());
    const PointSet ps2(d, std::move(doubled));
    const auto m = trial % 2 ? Measure::uniform(d) : gen::probability_measure(rng, d, 5);
    CHECK(star_discrepancy(ps2, m).value == doctest::Approx(star_discrepancy(ps, m).value).epsilon(1e-14));
  }
}

TEST_CASE("uniform path agrees with an analytic Lebesgue cdf") {
  gen::Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = gen::index(rng, 1, 3);
    const auto ps = gen::point_set(rng, d, gen::index(rng, 1, 12));
    const double u = star_discrepancy(ps, Measure::uniform(d)).value;
    const double a = star_discrepancy(ps, analytic_uniform(d)).value;
    CHECK(std::abs(u - a) <= 1e-12);
  }
}

TEST_CASE("parallel sweep matches the serial sweep") {
  gen::Rng rng(61);
  const auto ps = gen::point_set(rng, 2, 250);
  DiscrepancyOptions serial, parallel;
  parallel.threads = 4;
  const auto a = star_discrepancy(ps, Measure::uniform(2), serial);
  const auto b = star_discrepancy(ps, Measure::uniform(2), parallel);
  CHECK(a.value == b.value);
  CHECK(a.witness_box.upper == b.witness_box.upper);
  CHECK(a.witness_sides == b.witness_sides);
}

TEST_CASE("budget and dimension limits") {
  gen::Rng rng(67);
  const auto ps = gen::point_set(rng, 2, 50);
  DiscrepancyOptions tight;
  tight.cell_budget = 100.0;
  CHECK(critical_cell_count(ps, Measure::uniform(2)) > 100.0);
  CHECK_THROWS_AS(star_discrepancy(ps, Measure::uniform(2), tight), BudgetExceeded);

  const auto wide = gen::point_set(rng, 5, 3);
  CHECK_THROWS_AS(star_discrepancy(wide, Measure::uniform(5)), BudgetExceeded);
  DiscrepancyOptions five;
  five.max_dimension = 5;
  CHECK_NOTHROW(star_discrepancy(wide, Measure::uniform(5), five));
}

TEST_CASE("random search finds the unattained supremum") {
  const PointSet x(2, {{56.0 / 81.0, k2023}});
  const auto r = random_search_lower_bound(x, Measure::uniform(2), 10000, 7);
  CHECK(r.value >= k2023 - 1e-9);
  CHECK(r.value <= k2023 + 1e-12);
  CHECK(r.method == DiscrepancyResult::Method::RandomSearch);
  CHECK(std::abs(witness_value(r, x, Measure::uniform(2)) - r.value) <= 1e-12);
}

TEST_CASE("random search is a lower bound") {
  gen::Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = gen::index(rng, 1, 3);
    const auto ps = gen::point_set(rng, d, gen::index(rng, 1, 10));
    const Measure m = trial % 3 == 0   ? Measure::uniform(d)
                      : trial % 3 == 1 ? gen::probability_measure(rng, d, 5)
                                       : gen::product_measure(rng, d, gen::AxisKind::WithJumps);
    const double exact = star_discrepancy(ps, m).value;
    const double search = random_search_lower_bound(ps, m, 200, rng()).value;
    CHECK(search <= exact + 1e-12);
  }
}

TEST_CASE("random search is deterministic for a fixed seed") {
  gen::Rng rng(73);
  const auto ps = gen::point_set(rng, 2, 20);
  const auto a = random_search_lower_bound(ps, Measure::uniform(2), 1, 99);
  const auto b = random_search_lower_bound(ps, Measure::uniform(2), 1, 99);
  CHECK(a.value == b.value);
  CHECK(a.witness_box.upper == b.witness_box.upper);
  CHECK_THROWS_AS(random_search_lower_bound(ps, Measure::uniform(2), 0, 1), ValidationError);
}
