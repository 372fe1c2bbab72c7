#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "pum/covering.hpp"
#include "pum/errors.hpp"
#include "pum/kernels.hpp"
#include "pum/rbf.hpp"

namespace pum {

using WeightList = std::vector<std::pair<std::int32_t, double>>;

/// Shepard weights w_j(x) = phi_j(x) / sum_k phi_k(x) over the patches whose
/// support contains x, scanning only the cell neighborhood of x. Returned
/// entries are sorted by patch id, strictly positive, and sum to 1.
template <std::size_t N>
WeightList pu_weights(const Point<N>& x, const Covering<N>& covering,
                      const RadialKernel& weight_kernel,
                      const std::vector<std::uint8_t>* active = nullptr) {
  WeightList weights;
  covering.center_cells.for_each_near(x, covering.radius, [&](std::int32_t j) {
    if (active && !(*active)[static_cast<std::size_t>(j)]) return;
    const double phi = weight_kernel(distance(x, covering.centers[static_cast<std::size_t>(j)]));
    if (phi > 0.0) weights.emplace_back(j, phi);
  });
  if (weights.empty()) {
    std::ostringstream msg;
    msg << "point (";
    for (std::size_t d = 0; d < N; ++d) msg << (d ? ", " : "") << x[d];
    msg << ") is covered by no patch";
    throw CoveringError(msg.str());
  }
  std::sort(weights.begin(), weights.end());
  double total = 0.0;
  for (const auto& [j, phi] : weights) total += phi;
  for (auto& [j, phi] : weights) phi /= total;
  return weights;
}

/// Partition of unity interpolant: per-patch local RBF models blended with
/// Shepard weights generated by a compactly supported kernel whose support
/// equals the patch radius. Immutable after fitting; evaluation is const.
template <std::size_t N>
struct PumInterpolant {
  Covering<N> covering;
  RadialKernel rbf_kernel;
  RadialKernel pu_kernel;
  std::vector<LocalRbf<N>> locals;       // empty for inactive patches
  std::vector<std::uint8_t> active;      // patches with at least one data point

  double operator()(const Point<N>& x) const {
    const WeightList weights = pu_weights(x, covering, pu_kernel, &active);
    double acc = 0.0;
    for (const auto& [j, w] : weights) acc += w * locals[static_cast<std::size_t>(j)](x);
    return acc;
  }
};

/// Fits one local RBF interpolant per nonempty patch. Patches without data
/// are inactive and drop out of both the numerator and denominator of the
/// Shepard weights.
template <std::size_t N>
PumInterpolant<N> fit_pum(std::span<const Point<N>> X, std::span<const double> F,
                          Covering<N> covering, const RadialKernel& rbf_kernel,
                          KernelFamily pu_family = KernelFamily::wendland2) {
  if (X.size() != F.size() || X.empty())
    throw InputError("fit_pum: need matching, nonempty points and values");
  if (!RadialKernel{pu_family}.compact_support())
    throw InputError("fit_pum: partition weights need a compactly supported family");
  if (covering.members.empty()) assign_points(covering, X);

  PumInterpolant<N> model;
  model.rbf_kernel = rbf_kernel;
  model.pu_kernel = RadialKernel{pu_family, 1.0 / covering.radius};
  model.covering = std::move(covering);
  model.locals.resize(model.covering.patch_count());
  model.active.assign(model.covering.patch_count(), 0);

  std::vector<Point<N>> patch_points;
  std::vector<double> patch_values;
  for (std::size_t j = 0; j < model.covering.patch_count(); ++j) {
    const auto& ids = model.covering.members[j];
    if (ids.empty()) continue;
    patch_points.clear();
    patch_values.clear();
    for (std::int32_t i : ids) {
      patch_points.push_back(X[static_cast<std::size_t>(i)]);
      patch_values.push_back(F[static_cast<std::size_t>(i)]);
    }
    try {
      model.locals[j] = fit_rbf<N>(patch_points, patch_values, rbf_kernel);
    } catch (const ConditioningError& e) {
      throw ConditioningError("patch " + std::to_string(j) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("patch " + std::to_string(j) + ": " + e.what());
    }
    model.active[j] = 1;
  }
  return model;
}

template <std::size_t N>
PumInterpolant<N> fit_pum(std::span<const Point<N>> X, std::span<const double> F,
                          const Box<N>& domain, const RadialKernel& rbf_kernel,
                          KernelFamily pu_family = KernelFamily::wendland2) {
  return fit_pum(X, F, build_covering(X, domain), rbf_kernel, pu_family);
}

}  // namespace pum
