#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pum/errors.hpp"
#include "pum/point.hpp"

namespace pum {

/// Radical inverse of k in the given base.
inline double radical_inverse(std::uint64_t k, std::uint32_t base) {
  double inv = 1.0 / base;
  double factor = inv;
  double value = 0.0;
  while (k) {
    value += factor * static_cast<double>(k % base);
    factor *= inv;
    k /= base;
  }
  return value;
}

/// First `count` Halton points in (0,1)^Dim, indices starting at k = 1 so the
/// origin is skipped. Coordinate d uses the d-th prime base.
template <std::size_t Dim>
std::vector<Point<Dim>> halton(std::size_t count) {
  static_assert(Dim >= 1 && Dim <= 6, "halton: supported dimensions are 1..6");
  constexpr std::uint32_t primes[6] = {2, 3, 5, 7, 11, 13};
  std::vector<Point<Dim>> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t d = 0; d < Dim; ++d)
      pts[k][d] = radical_inverse(static_cast<std::uint64_t>(k + 1), primes[d]);
  return pts;
}

/// The (2^l + 1)^2 lattice { (i/2^l, j/2^l) } on the unit square.
inline std::vector<Point2> grid_points(int level) {
  if (level < 1) throw InputError("grid_points: level must be at least 1");
  const std::size_t side = (std::size_t{1} << level) + 1;
  const double spacing = 1.0 / static_cast<double>(std::size_t{1} << level);
  std::vector<Point2> pts;
  pts.reserve(side * side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j)
      pts.push_back({static_cast<double>(i) * spacing, static_cast<double>(j) * spacing});
  return pts;
}

enum class TestFunction { franke, f1, f2, f3, z };

inline double franke(double x, double y) {
  const double a = 9.0 * x, b = 9.0 * y;
  return 0.75 * std::exp(-((a - 2.0) * (a - 2.0) + (b - 2.0) * (b - 2.0)) / 4.0) +
         0.75 * std::exp(-(a + 1.0) * (a + 1.0) / 49.0 - (b + 1.0) / 10.0) +
         0.50 * std::exp(-((a - 7.0) * (a - 7.0) + (b - 3.0) * (b - 3.0)) / 4.0) -
         0.20 * std::exp(-(a - 4.0) * (a - 4.0) - (b - 7.0) * (b - 7.0));
}

/// Piecewise test functions: f1/f2/f3 add +1 to Franke's function on one side
/// of a circle, an L-shaped curve, and a diagonal; z switches between sin(xy)
/// and cos(xy) across a circle (boundary on the sine branch).
inline double eval_test_function(TestFunction fn, const Point2& p) {
  const double x = p[0], y = p[1];
  switch (fn) {
    case TestFunction::franke:
      return franke(x, y);
    case TestFunction::f1:
      return x * x + y * y - 0.25 >= 0.0 ? 1.0 + franke(x, y) : franke(x, y);
    case TestFunction::f2:
      return x >= 0.5 || y >= 0.5 ? 1.0 + franke(x, y) : franke(x, y);
    case TestFunction::f3:
      return x + y - 1.0 >= 0.0 ? 1.0 + franke(x, y) : franke(x, y);
    case TestFunction::z: {
      const double dx = x - 0.5, dy = y - 0.5;
      return dx * dx + dy * dy >= 0.0625 ? std::sin(x * y) : std::cos(x * y);
    }
  }
  return 0.0;  // unreachable
}

inline bool has_discontinuity(TestFunction fn) { return fn != TestFunction::franke; }

/// Nominal jump magnitude across the discontinuity curve (1 for f1/f2/f3; for
/// z the largest gap cos(u) - sin(u) attained on the circle, at the smallest
/// product u = xy it reaches).
inline double nominal_jump(TestFunction fn) {
  switch (fn) {
    case TestFunction::franke:
      return 0.0;
    case TestFunction::z: {
      const double u = 0.25 - 0.125 * std::sqrt(2.0) + 0.03125;
      return std::cos(u) - std::sin(u);
    }
    default:
      return 1.0;
  }
}

inline std::string_view test_function_name(TestFunction fn) {
  switch (fn) {
    case TestFunction::franke:
      return "franke";
    case TestFunction::f1:
      return "f1";
    case TestFunction::f2:
      return "f2";
    case TestFunction::f3:
      return "f3";
    case TestFunction::z:
      return "z";
  }
  return "?";
}

inline TestFunction test_function_from_name(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (TestFunction fn : {TestFunction::franke, TestFunction::f1, TestFunction::f2,
                          TestFunction::f3, TestFunction::z})
    if (lower == test_function_name(fn)) return fn;
  throw InputError("unknown test function: \"" + std::string(name) + "\"");
}

inline std::vector<double> sample_values(TestFunction fn, const std::vector<Point2>& pts) {
  std::vector<double> values;
  values.reserve(pts.size());
  for (const auto& p : pts) values.push_back(eval_test_function(fn, p));
  return values;
}

}  // namespace pum
