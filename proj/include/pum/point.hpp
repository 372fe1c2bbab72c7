#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace pum {

template <std::size_t N>
using Point = std::array<double, N>;

using Point2 = Point<2>;

template <std::size_t N>
inline double squared_distance(const Point<N>& a, const Point<N>& b) {
  double acc = 0.0;
  for (std::size_t d = 0; d < N; ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

template <std::size_t N>
inline double distance(const Point<N>& a, const Point<N>& b) {
  return std::sqrt(squared_distance(a, b));
}

/// Axis-aligned box domain.
template <std::size_t N>
struct Box {
  Point<N> lower{};
  Point<N> upper{};

  static Box unit() {
    Box box;
    box.lower.fill(0.0);
    box.upper.fill(1.0);
    return box;
  }

  double edge(std::size_t d) const { return upper[d] - lower[d]; }

  double max_edge() const {
    double e = 0.0;
    for (std::size_t d = 0; d < N; ++d) e = std::max(e, edge(d));
    return e;
  }

  bool contains(const Point<N>& p) const {
    for (std::size_t d = 0; d < N; ++d)
      if (p[d] < lower[d] || p[d] > upper[d]) return false;
    return true;
  }

  bool valid() const {
    for (std::size_t d = 0; d < N; ++d)
      if (!(lower[d] < upper[d])) return false;
    return true;
  }
};

/// Lattice of side^N points spanning the box, boundary included.
template <std::size_t N>
inline std::vector<Point<N>> box_grid(const Box<N>& box, std::size_t side) {
  std::vector<Point<N>> pts;
  if (side == 0) return pts;
  std::size_t total = 1;
  for (std::size_t d = 0; d < N; ++d) total *= side;
  pts.reserve(total);

  std::array<std::size_t, N> idx{};
  for (std::size_t k = 0; k < total; ++k) {
    Point<N> p;
    for (std::size_t d = 0; d < N; ++d) {
      const double t = side == 1 ? 0.5 : static_cast<double>(idx[d]) / static_cast<double>(side - 1);
      p[d] = box.lower[d] + t * box.edge(d);
    }
    pts.push_back(p);
    for (std::size_t d = N; d-- > 0;) {
      if (++idx[d] < side) break;
      idx[d] = 0;
    }
  }
  return pts;
}

}  // namespace pum
