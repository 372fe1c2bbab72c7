#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "pum/errors.hpp"
#include "pum/point.hpp"

namespace pum {

/// Cell-block spatial index: square cells of a fixed side over a box, each
/// bucket holding the indices of the items that fall into it. Queries scan
/// only the cells a search ball can touch.
template <std::size_t N>
class CellGrid {
 public:
  CellGrid() = default;

  CellGrid(const Box<N>& box, double cell_size) : origin_(box.lower), cell_(cell_size) {
    if (!(cell_size > 0.0)) throw InputError("cell grid: cell size must be positive");
    std::size_t total = 1;
    for (std::size_t d = 0; d < N; ++d) {
      shape_[d] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(box.edge(d) / cell_size)));
      total *= static_cast<std::size_t>(shape_[d]);
    }
    buckets_.assign(total, {});
  }

  double cell_size() const { return cell_; }
  bool empty() const { return buckets_.empty(); }

  void insert(std::span<const Point<N>> items) {
    for (std::size_t i = 0; i < items.size(); ++i)
      buckets_[flatten(coords(items[i]))].push_back(static_cast<std::int32_t>(i));
  }

  std::array<std::int64_t, N> coords(const Point<N>& p) const {
    std::array<std::int64_t, N> c;
    for (std::size_t d = 0; d < N; ++d) {
      auto raw = static_cast<std::int64_t>(std::floor((p[d] - origin_[d]) / cell_));
      c[d] = std::clamp<std::int64_t>(raw, 0, shape_[d] - 1);
    }
    return c;
  }

  /// Visits every bucketed id whose cell intersects the ball of the given
  /// radius around q (a superset of the ids actually inside the ball).
  template <typename Fn>
  void for_each_near(const Point<N>& q, double radius, Fn&& fn) const {
    std::array<std::int64_t, N> lo, hi;
    for (std::size_t d = 0; d < N; ++d) {
      lo[d] = std::clamp<std::int64_t>(
          static_cast<std::int64_t>(std::floor((q[d] - radius - origin_[d]) / cell_)), 0, shape_[d] - 1);
      hi[d] = std::clamp<std::int64_t>(
          static_cast<std::int64_t>(std::floor((q[d] + radius - origin_[d]) / cell_)), 0, shape_[d] - 1);
    }
    std::array<std::int64_t, N> c = lo;
    while (true) {
      for (std::int32_t id : buckets_[flatten(c)]) fn(id);
      std::size_t d = N;
      while (d-- > 0) {
        if (++c[d] <= hi[d]) break;
        c[d] = lo[d];
        if (d == 0) return;
      }
    }
  }

  /// Distance from q to the nearest of the indexed items, by expanding shell
  /// search. `items` must be the span the grid was built over.
  double nearest_distance(const Point<N>& q, std::span<const Point<N>> items) const {
    if (items.empty()) throw InputError("cell grid: nearest query over empty set");
    const auto center = coords(q);
    std::int64_t k_max = 0;
    for (std::size_t d = 0; d < N; ++d)
      k_max = std::max({k_max, center[d], shape_[d] - 1 - center[d]});

    double best_sq = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 0; k <= k_max; ++k) {
      for_each_in_shell(center, k, [&](std::int32_t id) {
        best_sq = std::min(best_sq, squared_distance(q, items[id]));
      });
      // Cells beyond Chebyshev radius k are at least k * cell away from q.
      const double bound = static_cast<double>(k) * cell_;
      if (best_sq <= bound * bound) break;
    }
    return std::sqrt(best_sq);
  }

 private:
  std::size_t flatten(const std::array<std::int64_t, N>& c) const {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < N; ++d) idx = idx * static_cast<std::size_t>(shape_[d]) + static_cast<std::size_t>(c[d]);
    return idx;
  }

  template <typename Fn>
  void for_each_in_shell(const std::array<std::int64_t, N>& center, std::int64_t k, Fn&& fn) const {
    std::array<std::int64_t, N> lo, hi;
    for (std::size_t d = 0; d < N; ++d) {
      lo[d] = std::max<std::int64_t>(center[d] - k, 0);
      hi[d] = std::min<std::int64_t>(center[d] + k, shape_[d] - 1);
    }
    std::array<std::int64_t, N> c = lo;
    while (true) {
      std::int64_t cheb = 0;
      for (std::size_t d = 0; d < N; ++d) cheb = std::max(cheb, std::abs(c[d] - center[d]));
      if (cheb == k)
        for (std::int32_t id : buckets_[flatten(c)]) fn(id);
      std::size_t d = N;
      while (d-- > 0) {
        if (++c[d] <= hi[d]) break;
        c[d] = lo[d];
        if (d == 0) return;
      }
    }
  }

  Point<N> origin_{};
  double cell_ = 0.0;
  std::array<std::int64_t, N> shape_{};
  std::vector<std::vector<std::int32_t>> buckets_;
};

}  // namespace pum
