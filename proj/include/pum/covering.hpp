#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <vector>

#include "pum/cell_grid.hpp"
#include "pum/errors.hpp"
#include "pum/point.hpp"

namespace pum {

/// Regular covering of the domain by M = m^N ball patches of common radius,
/// with centers on the per-axis midpoint grid, plus the cell index used for
/// patch membership and neighbor queries.
template <std::size_t N>
struct Covering {
  Box<N> domain;
  std::vector<Point<N>> centers;
  double radius = 0.0;
  CellGrid<N> center_cells;  // buckets patch ids
  CellGrid<N> cells;         // buckets data-point ids, filled by assign_points
  std::vector<Point<N>> points;
  std::vector<std::vector<std::int32_t>> members;  // per patch, sorted point ids

  std::size_t patch_count() const { return centers.size(); }
  std::size_t count(std::size_t j) const { return members[j].size(); }
};

/// Builds patch centers for n_points data sites: m = floor(n_points^(1/N) / 2)
/// patches per direction, radius sqrt(2)/m scaled by the domain edge. The
/// radius always satisfies radius >= edge / M^(1/N).
template <std::size_t N>
Covering<N> build_covering(std::size_t n_points, const Box<N>& domain = Box<N>::unit()) {
  if (!domain.valid()) throw InputError("build_covering: domain box is empty");
  const double root = N == 2 ? std::sqrt(static_cast<double>(n_points))
                             : std::pow(static_cast<double>(n_points), 1.0 / static_cast<double>(N));
  const auto m = static_cast<std::int64_t>(std::floor(root / 2.0 + 1e-12));
  if (m < 1) throw InputError("build_covering: too few data points for one patch per direction");

  Covering<N> covering;
  covering.domain = domain;
  covering.radius = std::sqrt(2.0) / static_cast<double>(m) * domain.max_edge();

  std::size_t total = 1;
  for (std::size_t d = 0; d < N; ++d) total *= static_cast<std::size_t>(m);
  covering.centers.reserve(total);
  std::array<std::int64_t, N> idx{};
  for (std::size_t k = 0; k < total; ++k) {
    Point<N> c;
    for (std::size_t d = 0; d < N; ++d)
      c[d] = domain.lower[d] +
             (static_cast<double>(idx[d]) + 0.5) / static_cast<double>(m) * domain.edge(d);
    covering.centers.push_back(c);
    for (std::size_t d = N; d-- > 0;) {
      if (++idx[d] < m) break;
      idx[d] = 0;
    }
  }

  covering.center_cells = CellGrid<N>(domain, covering.radius);
  covering.center_cells.insert(std::span<const Point<N>>(covering.centers));
  covering.cells = CellGrid<N>(domain, covering.radius);
  return covering;
}

/// Assigns data points to patches: members[j] = { i : |x_i - center_j| < radius },
/// found by bucketing the points into cells of side radius and scanning only the
/// neighboring cells of each center. A point inside no patch is an error.
template <std::size_t N>
void assign_points(Covering<N>& covering, std::span<const Point<N>> X) {
  covering.points.assign(X.begin(), X.end());
  covering.cells = CellGrid<N>(covering.domain, covering.radius);
  covering.cells.insert(X);

  const double radius_sq = covering.radius * covering.radius;
  covering.members.assign(covering.patch_count(), {});
  std::vector<std::uint8_t> covered(X.size(), 0);
  for (std::size_t j = 0; j < covering.patch_count(); ++j) {
    auto& list = covering.members[j];
    covering.cells.for_each_near(covering.centers[j], covering.radius, [&](std::int32_t i) {
      if (squared_distance(X[static_cast<std::size_t>(i)], covering.centers[j]) < radius_sq) {
        list.push_back(i);
        covered[static_cast<std::size_t>(i)] = 1;
      }
    });
    std::sort(list.begin(), list.end());
  }

  for (std::size_t i = 0; i < X.size(); ++i)
    if (!covered[i]) {
      std::ostringstream msg;
      msg << "point " << i << " (";
      for (std::size_t d = 0; d < N; ++d) msg << (d ? ", " : "") << X[i][d];
      msg << ") lies in no patch";
      throw CoveringError(msg.str());
    }
}

template <std::size_t N>
Covering<N> build_covering(std::span<const Point<N>> X, const Box<N>& domain = Box<N>::unit()) {
  Covering<N> covering = build_covering<N>(X.size(), domain);
  assign_points(covering, X);
  return covering;
}

/// Covering over explicit centers and radius, for layouts other than the
/// default midpoint grid.
template <std::size_t N>
Covering<N> make_covering(std::vector<Point<N>> centers, double radius,
                          const Box<N>& domain = Box<N>::unit()) {
  if (centers.empty()) throw InputError("make_covering: need at least one center");
  if (!(radius > 0.0)) throw InputError("make_covering: radius must be positive");
  Covering<N> covering;
  covering.domain = domain;
  covering.centers = std::move(centers);
  covering.radius = radius;
  covering.center_cells = CellGrid<N>(domain, radius);
  covering.center_cells.insert(std::span<const Point<N>>(covering.centers));
  covering.cells = CellGrid<N>(domain, radius);
  return covering;
}

/// Fill distance approximated on a probe sample: max over probe points of the
/// distance to the nearest data site.
struct FillDistance {
  double value = 0.0;
  std::size_t sample_size = 0;
};

template <std::size_t N>
FillDistance fill_distance(std::span<const Point<N>> X, std::span<const Point<N>> probe) {
  if (X.empty() || probe.empty()) throw InputError("fill_distance: X and probe must be nonempty");

  Box<N> box;
  box.lower = X.front();
  box.upper = X.front();
  for (auto span : {X, probe})
    for (const auto& p : span)
      for (std::size_t d = 0; d < N; ++d) {
        box.lower[d] = std::min(box.lower[d], p[d]);
        box.upper[d] = std::max(box.upper[d], p[d]);
      }
  double cell = 0.0;
  const auto per_axis = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(X.size()), 1.0 / static_cast<double>(N)))));
  for (std::size_t d = 0; d < N; ++d) cell = std::max(cell, box.edge(d) / static_cast<double>(per_axis));
  if (!(cell > 0.0)) cell = 1.0;  // all points coincide

  CellGrid<N> grid(box, cell);
  grid.insert(X);

  FillDistance result;
  result.sample_size = probe.size();
  for (const auto& q : probe) result.value = std::max(result.value, grid.nearest_distance(q, X));
  return result;
}

/// Probe lattice for fill-distance estimation, 4x finer per axis than the
/// data resolution n_points^(1/N).
template <std::size_t N>
std::vector<Point<N>> default_fill_probe(std::size_t n_points, const Box<N>& domain = Box<N>::unit()) {
  const auto per_axis = static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(n_points), 1.0 / static_cast<double>(N)) - 1e-12));
  const std::size_t side = 4 * std::max<std::size_t>(per_axis, 2) - 3;  // 4x finer spacing
  return box_grid(domain, side);
}

}  // namespace pum
