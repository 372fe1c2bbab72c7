#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "pum/sampling.hpp"

using Catch::Approx;
using pum::Point2;
using pum::TestFunction;

TEST_CASE("halton radical inverses") {
  CHECK(pum::radical_inverse(1, 2) == 0.5);
  CHECK(pum::radical_inverse(2, 2) == 0.25);
  CHECK(pum::radical_inverse(3, 2) == 0.75);

  const auto pts = pum::halton<2>(3);
  CHECK(pts[0][0] == 0.5);
  CHECK(pts[0][1] == Approx(1.0 / 3.0).margin(1e-15));
  CHECK(pts[1][0] == 0.25);
  CHECK(pts[2][0] == 0.75);
}

TEST_CASE("halton points stay strictly inside the open unit box") {
  const auto pts = pum::halton<3>(5000);
  for (const auto& p : pts)
    for (double c : p) {
      REQUIRE(c > 0.0);
      REQUIRE(c < 1.0);
    }
}

TEST_CASE("halton points are pairwise distinct") {
  auto pts = pum::halton<2>(100000);
  std::sort(pts.begin(), pts.end());
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
}

TEST_CASE("grid points") {
  const auto coarse = pum::grid_points(1);
  REQUIRE(coarse.size() == 9);
  CHECK(std::find(coarse.begin(), coarse.end(), Point2{0.0, 0.0}) != coarse.end());
  CHECK(std::find(coarse.begin(), coarse.end(), Point2{0.5, 0.5}) != coarse.end());
  CHECK(std::find(coarse.begin(), coarse.end(), Point2{1.0, 1.0}) != coarse.end());

  CHECK(pum::grid_points(4).size() == 289);

  const auto fine = pum::grid_points(4);
  CHECK(fine[1][1] - fine[0][1] == Approx(1.0 / 16.0).margin(1e-16));
  CHECK_THROWS_AS(pum::grid_points(0), pum::InputError);
}

TEST_CASE("franke value at the origin") {
  // independent term-by-term evaluation
  const double term1 = 0.75 * std::exp(-(4.0 + 4.0) / 4.0);
  const double term2 = 0.75 * std::exp(-1.0 / 49.0 - 1.0 / 10.0);
  const double term3 = 0.50 * std::exp(-(49.0 + 9.0) / 4.0);
  const double term4 = -0.20 * std::exp(-16.0 - 49.0);
  CHECK(pum::franke(0.0, 0.0) == Approx(term1 + term2 + term3 + term4).margin(1e-15));
  CHECK(pum::franke(0.0, 0.0) == Approx(0.76642).margin(5e-6));
}

TEST_CASE("piecewise functions differ from franke by the unit jump") {
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p{coord(rng), coord(rng)};
    const double base = pum::franke(p[0], p[1]);
    const double jump1 = pum::eval_test_function(TestFunction::f1, p) - base;
    CHECK(jump1 == (p[0] * p[0] + p[1] * p[1] - 0.25 >= 0.0 ? 1.0 : 0.0));
    const double jump2 = pum::eval_test_function(TestFunction::f2, p) - base;
    CHECK(jump2 == (p[0] >= 0.5 || p[1] >= 0.5 ? 1.0 : 0.0));
    const double jump3 = pum::eval_test_function(TestFunction::f3, p) - base;
    CHECK(jump3 == (p[0] + p[1] - 1.0 >= 0.0 ? 1.0 : 0.0));
  }
}

TEST_CASE("z switches between sine and cosine across the circle") {
  CHECK(pum::eval_test_function(TestFunction::z, {0.5, 0.5}) == Approx(std::cos(0.25)).margin(1e-15));
  CHECK(pum::eval_test_function(TestFunction::z, {0.5, 0.5}) == Approx(0.96891).margin(5e-6));
  // boundary belongs to the sine branch
  CHECK(pum::eval_test_function(TestFunction::z, {0.25, 0.5}) ==
        Approx(std::sin(0.125)).margin(1e-15));
  CHECK(pum::eval_test_function(TestFunction::z, {0.9, 0.9}) ==
        Approx(std::sin(0.81)).margin(1e-15));

  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p{coord(rng), coord(rng)};
    const double dx = p[0] - 0.5, dy = p[1] - 0.5;
    const double expected =
        dx * dx + dy * dy >= 0.0625 ? std::sin(p[0] * p[1]) : std::cos(p[0] * p[1]);
    REQUIRE(pum::eval_test_function(TestFunction::z, p) == expected);
  }
}

TEST_CASE("test function names") {
  CHECK(pum::test_function_from_name("Franke") == TestFunction::franke);
  CHECK(pum::test_function_from_name("F1") == TestFunction::f1);
  CHECK(pum::test_function_from_name("z") == TestFunction::z);
  CHECK_THROWS_AS(pum::test_function_from_name("f9"), pum::InputError);
  CHECK(pum::nominal_jump(TestFunction::f2) == 1.0);
  CHECK(pum::nominal_jump(TestFunction::z) > 0.0);
  CHECK_FALSE(pum::has_discontinuity(TestFunction::franke));
  CHECK(pum::has_discontinuity(TestFunction::z));
}
