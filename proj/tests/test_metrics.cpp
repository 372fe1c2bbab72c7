#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "pum/metrics.hpp"

using Catch::Approx;
using pum::LevelResult;

TEST_CASE("error norms") {
  SECTION("exact agreement gives zero") {
    const std::vector<double> v{1.0, -2.0, 3.0};
    const auto norms = pum::error_norms(v, v);
    CHECK(norms.mae == 0.0);
    CHECK(norms.rmse == 0.0);
  }
  SECTION("hand-checked pair") {
    const std::vector<double> exact{3.0, 0.0};
    const std::vector<double> approx{0.0, 4.0};
    const auto norms = pum::error_norms(exact, approx);
    CHECK(norms.mae == 4.0);
    CHECK(norms.rmse == Approx(std::sqrt(12.5)).margin(1e-15));
    CHECK(norms.rmse == Approx(3.5355).margin(5e-5));
  }
  SECTION("matches the naive loop on random vectors") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::vector<double> exact(257), approx(257);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      exact[i] = value(rng);
      approx[i] = value(rng);
    }
    double mae = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      const double e = std::abs(exact[i] - approx[i]);
      if (e > mae) mae = e;
      sum += e * e;
    }
    const auto norms = pum::error_norms(exact, approx);
    CHECK(norms.mae == mae);
    CHECK(norms.rmse == Approx(std::sqrt(sum / 257.0)).margin(1e-15));
  }
  SECTION("mae dominates rmse") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::vector<double> exact(64), approx(64);
    for (std::size_t i = 0; i < 64; ++i) {
      exact[i] = value(rng);
      approx[i] = value(rng);
    }
    const auto norms = pum::error_norms(exact, approx);
    CHECK(norms.mae >= norms.rmse);
  }
  SECTION("permutation invariance") {
    std::mt19937 rng(44);
    std::vector<double> exact{1.0, 2.0, 3.0, 4.0};
    std::vector<double> approx{1.5, 1.0, 3.25, 3.0};
    const auto before = pum::error_norms(exact, approx);
    std::vector<std::size_t> order{2, 0, 3, 1};
    std::vector<double> exact_p(4), approx_p(4);
    for (std::size_t i = 0; i < 4; ++i) {
      exact_p[i] = exact[order[i]];
      approx_p[i] = approx[order[i]];
    }
    const auto after = pum::error_norms(exact_p, approx_p);
    CHECK(before.mae == after.mae);
    CHECK(before.rmse == Approx(after.rmse).margin(1e-16));
  }
  SECTION("length mismatch is rejected") {
    const std::vector<double> a{1.0}, b{1.0, 2.0};
    CHECK_THROWS_AS(pum::error_norms(a, b), pum::InputError);
  }
}

namespace {
LevelResult make_level(int level, double fill, double mae, double rmse) {
  LevelResult row;
  row.level = level;
  row.fill = fill;
  row.mae = mae;
  row.rmse = rmse;
  return row;
}
}  // namespace

TEST_CASE("convergence rates") {
  SECTION("errors quartering while h halves give rate two") {
    std::vector<LevelResult> levels{make_level(4, 0.2, 0.08, 0.04),
                                    make_level(5, 0.1, 0.02, 0.01)};
    pum::fill_convergence_rates(levels);
    CHECK_FALSE(levels[0].rate_inf.has_value());
    CHECK(levels[1].rate_inf.value() == Approx(2.0).margin(1e-12));
    CHECK(levels[1].rate_2.value() == Approx(2.0).margin(1e-12));
  }
  SECTION("reported table-one pair") {
    std::vector<LevelResult> levels{make_level(4, 0.2, 7.5944e-3, 1.0),
                                    make_level(5, 0.1, 1.6541e-3, 0.5)};
    pum::fill_convergence_rates(levels);
    CHECK(levels[1].rate_inf.value() == Approx(2.1989).margin(5e-5));
  }
  SECTION("equal errors give rate zero") {
    std::vector<LevelResult> levels{make_level(4, 0.2, 0.5, 0.1), make_level(5, 0.1, 0.5, 0.1)};
    pum::fill_convergence_rates(levels);
    CHECK(levels[1].rate_inf.value() == 0.0);
  }
  SECTION("zero error marks the rate undefined") {
    std::vector<LevelResult> levels{make_level(4, 0.2, 0.5, 0.1), make_level(5, 0.1, 0.0, 0.0)};
    pum::fill_convergence_rates(levels);
    CHECK_FALSE(levels[1].rate_inf.has_value());
    CHECK_FALSE(levels[1].rate_2.has_value());
  }
  SECTION("rates are invariant under a common error scale") {
    std::vector<LevelResult> a{make_level(4, 0.23, 0.31, 0.11), make_level(5, 0.11, 0.07, 0.02),
                               make_level(6, 0.05, 0.013, 0.004)};
    auto b = a;
    for (auto& row : b) {
      row.mae *= 37.5;
      row.rmse *= 37.5;
    }
    pum::fill_convergence_rates(a);
    pum::fill_convergence_rates(b);
    for (std::size_t i = 1; i < a.size(); ++i) {
      CHECK(a[i].rate_inf.value() == Approx(b[i].rate_inf.value()).margin(1e-12));
      CHECK(a[i].rate_2.value() == Approx(b[i].rate_2.value()).margin(1e-12));
    }
  }
  SECTION("non-decreasing fills are rejected") {
    std::vector<LevelResult> levels{make_level(4, 0.1, 0.5, 0.1), make_level(5, 0.1, 0.2, 0.05)};
    CHECK_THROWS_AS(pum::fill_convergence_rates(levels), pum::InputError);
  }
}
