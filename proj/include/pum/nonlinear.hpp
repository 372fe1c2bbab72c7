#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pum/covering.hpp"
#include "pum/errors.hpp"
#include "pum/partition.hpp"

namespace pum {

/// Parameters of the nonlinear weighting.
struct NlConfig {
  double t = 6.0;                  // indicator exponent
  double epsilon = 1e-14;          // guards the division in gamma_j
  double weight_threshold = 1e-3;  // on kernel values normalized to [0, 1]
  std::optional<double> contamination_threshold;  // default: measured fill distance

  void validate() const {
    if (!(t > 0.0)) throw InputError("nl config: t must be positive");
    if (!(epsilon > 0.0)) throw InputError("nl config: epsilon must be positive");
    if (!(weight_threshold > 0.0 && weight_threshold < 1.0))
      throw InputError("nl config: weight threshold must lie in (0, 1)");
    if (contamination_threshold && !(*contamination_threshold >= 0.0))
      throw InputError("nl config: contamination threshold must be nonnegative");
  }
};

/// Mean absolute residual of the best affine least-squares fit to the patch
/// data, solved by normal equations on a centered and scaled basis with the
/// same jitter ladder as the RBF solver. Residuals at rounding level snap to
/// exactly zero so that affine data yields indicator 0.
template <std::size_t N>
double smoothness_indicator(std::span<const Point<N>> points, std::span<const double> values) {
  const std::size_t n = points.size();
  if (n < 3 || values.size() != n)
    throw InputError("smoothness indicator: need at least 3 points with matching values");

  Point<N> centroid{};
  for (const auto& p : points)
    for (std::size_t d = 0; d < N; ++d) centroid[d] += p[d];
  for (std::size_t d = 0; d < N; ++d) centroid[d] /= static_cast<double>(n);
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, distance(p, centroid));
  if (!(scale > 0.0)) scale = 1.0;

  Eigen::MatrixXd basis(n, N + 1);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    basis(i, 0) = 1.0;
    for (std::size_t d = 0; d < N; ++d) basis(i, d + 1) = (points[i][d] - centroid[d]) / scale;
    rhs(i) = values[i];
  }
  const Eigen::MatrixXd normal = basis.transpose() * basis;
  const Eigen::VectorXd moments = basis.transpose() * rhs;
  const double mean_diag = normal.trace() / static_cast<double>(N + 1);

  Eigen::VectorXd beta;
  bool solved = false;
  for (double level : kJitterLadder) {
    Eigen::MatrixXd regularized = normal;
    if (level > 0.0) regularized.diagonal().array() += level * mean_diag;
    Eigen::LLT<Eigen::MatrixXd> llt(regularized);
    if (llt.info() != Eigen::Success) continue;
    beta = llt.solve(moments);
    if (!beta.allFinite()) continue;
    solved = true;
    break;
  }
  if (!solved) throw ConditioningError("smoothness indicator: normal equations failed");

  const Eigen::VectorXd residual = rhs - basis * beta;
  const double indicator = residual.cwiseAbs().sum() / static_cast<double>(n);
  const double max_abs = rhs.cwiseAbs().maxCoeff();
  return indicator <= 1e-12 * (1.0 + max_abs) ? 0.0 : indicator;
}

/// flag_j = (I_j > h), strict.
inline std::vector<std::uint8_t> mark_contaminated(std::span<const double> indicators, double h) {
  if (!(h >= 0.0)) throw InputError("mark_contaminated: threshold must be nonnegative");
  std::vector<std::uint8_t> flags(indicators.size());
  for (std::size_t j = 0; j < indicators.size(); ++j) flags[j] = indicators[j] > h ? 1 : 0;
  return flags;
}

enum class PointKind { regular, discontinuity };

/// Classification of an evaluation point: the significantly weighted patches
/// S(x) and their contaminated subset. The point is a discontinuity point
/// exactly when every patch in S(x) is contaminated (and S(x) is nonempty).
struct PointClass {
  PointKind kind = PointKind::regular;
  std::vector<std::int32_t> active;               // S(x)
  std::vector<std::int32_t> contaminated_active;  // the contaminated subset
};

struct ShepardStats {
  int widenings = 0;
  bool nearest_fallback = false;
};

/// Classical Shepard value at x: the convex combination of data values with
/// weights from the compactly supported kernel scaled to the given radius.
/// With no data point in range the radius doubles up to three times, then the
/// nearest data value is returned (reported through stats).
template <std::size_t N>
double shepard_eval(const Point<N>& x, const CellGrid<N>& cells, std::span<const Point<N>> X,
                    std::span<const double> F, KernelFamily family, double radius,
                    ShepardStats* stats = nullptr) {
  if (X.empty() || X.size() != F.size())
    throw InputError("shepard_eval: need matching, nonempty points and values");
  double r = radius;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const RadialKernel psi{family, 1.0 / r};
    double numerator = 0.0, denominator = 0.0;
    cells.for_each_near(x, r, [&](std::int32_t i) {
      const double w = psi(distance(x, X[static_cast<std::size_t>(i)]));
      numerator += w * F[static_cast<std::size_t>(i)];
      denominator += w;
    });
    if (denominator > 0.0) {
      if (stats) stats->widenings = attempt;
      return numerator / denominator;
    }
    r *= 2.0;
  }
  if (stats) {
    stats->widenings = 3;
    stats->nearest_fallback = true;
  }
  const double nearest = cells.nearest_distance(x, X);
  for (std::size_t i = 0; i < X.size(); ++i)
    if (distance(x, X[i]) <= nearest) return F[i];
  return F[0];  // unreachable
}

/// Nonlinear partition of unity interpolant: the base PUM model plus per-patch
/// smoothness indicators I_j, weight factors gamma_j = (epsilon + I_j)^-t and
/// contamination flags. Evaluation replaces the Shepard weights with the
/// data-dependent ones and falls back to Shepard's method at discontinuity
/// points.
template <std::size_t N>
struct NlPumInterpolant {
  PumInterpolant<N> base;
  std::vector<double> values;      // data values, for the Shepard fallback
  std::vector<double> indicators;  // +inf for patches with fewer than 3 points
  std::vector<double> gammas;      // (epsilon + I_j)^-t, 0 when I_j = +inf
  std::vector<double> log_gammas;  // -t * log(epsilon + I_j)
  std::vector<std::uint8_t> contaminated;
  NlConfig config;
  FillDistance fill;

  const Covering<N>& covering() const { return base.covering; }

  /// S(x) and its contaminated subset, by the weight threshold on the
  /// normalized kernel values.
  PointClass classify(const Point<N>& x) const {
    PointClass cls;
    bool covered = false;
    base.covering.center_cells.for_each_near(x, base.covering.radius, [&](std::int32_t j) {
      if (!base.active[static_cast<std::size_t>(j)]) return;
      const double phi = base.pu_kernel(distance(x, base.covering.centers[static_cast<std::size_t>(j)]));
      if (phi <= 0.0) return;
      covered = true;
      if (phi > config.weight_threshold) cls.active.push_back(j);
    });
    if (!covered) {
      std::ostringstream msg;
      msg << "point (";
      for (std::size_t d = 0; d < N; ++d) msg << (d ? ", " : "") << x[d];
      msg << ") is covered by no active patch";
      throw CoveringError(msg.str());
    }
    std::sort(cls.active.begin(), cls.active.end());
    for (std::int32_t j : cls.active)
      if (contaminated[static_cast<std::size_t>(j)]) cls.contaminated_active.push_back(j);
    cls.kind = !cls.active.empty() && cls.contaminated_active.size() == cls.active.size()
                   ? PointKind::discontinuity
                   : PointKind::regular;
    return cls;
  }

  /// Nonlinear weights W_j(x) = gamma_j phi_j(x) / sum_k gamma_k phi_k(x),
  /// formed in log space with a subtract-max shift so that arbitrarily large
  /// gamma ratios normalize stably.
  WeightList weights(const Point<N>& x) const {
    WeightList entries;
    base.covering.center_cells.for_each_near(x, base.covering.radius, [&](std::int32_t j) {
      if (!base.active[static_cast<std::size_t>(j)]) return;
      const double phi = base.pu_kernel(distance(x, base.covering.centers[static_cast<std::size_t>(j)]));
      if (phi > 0.0) entries.emplace_back(j, phi);
    });
    if (entries.empty()) {
      std::ostringstream msg;
      msg << "point (";
      for (std::size_t d = 0; d < N; ++d) msg << (d ? ", " : "") << x[d];
      msg << ") is covered by no active patch";
      throw CoveringError(msg.str());
    }
    std::sort(entries.begin(), entries.end());

    // alpha_j = gamma_j phi_j directly while the products stay representable;
    // otherwise shift in log space by the largest log-alpha.
    bool representable = true;
    double total = 0.0;
    std::vector<double> alpha(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      alpha[k] = gammas[static_cast<std::size_t>(entries[k].first)] * entries[k].second;
      if (!std::isfinite(alpha[k])) {
        representable = false;
        break;
      }
      total += alpha[k];
    }
    if (!representable || !std::isfinite(total) || total <= 0.0) {
      double max_log = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < entries.size(); ++k) {
        alpha[k] = std::log(entries[k].second) + log_gammas[static_cast<std::size_t>(entries[k].first)];
        max_log = std::max(max_log, alpha[k]);
      }
      if (!std::isfinite(max_log))
        throw Error("nonlinear weights: every overlapping patch is excluded at this point");
      total = 0.0;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        alpha[k] = std::exp(alpha[k] - max_log);
        total += alpha[k];
      }
    }
    WeightList result;
    result.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k)
      if (alpha[k] > 0.0) result.emplace_back(entries[k].first, alpha[k] / total);
    return result;
  }

  /// Two-pass evaluation: classify, then either blend the local interpolants
  /// with the nonlinear weights or apply Shepard's method at discontinuity
  /// points.
  std::pair<double, PointClass> eval(const Point<N>& x, ShepardStats* stats = nullptr) const {
    PointClass cls = classify(x);
    if (cls.kind == PointKind::discontinuity) {
      const double value = shepard_eval<N>(x, base.covering.cells, base.covering.points, values,
                                           base.pu_kernel.family, base.covering.radius, stats);
      return {value, std::move(cls)};
    }
    const WeightList w = weights(x);
    double acc = 0.0;
    for (const auto& [j, wj] : w) acc += wj * base.locals[static_cast<std::size_t>(j)](x);
    return {acc, std::move(cls)};
  }

  double operator()(const Point<N>& x) const { return eval(x).first; }
};

/// Fits the base PUM model, then computes indicators, gammas and
/// contamination flags. Patches with fewer than 3 points get indicator +inf:
/// they count as contaminated and are excluded from the nonlinear weights.
template <std::size_t N>
NlPumInterpolant<N> fit_nlpum(std::span<const Point<N>> X, std::span<const double> F,
                              Covering<N> covering, const RadialKernel& rbf_kernel,
                              KernelFamily pu_family = KernelFamily::wendland2,
                              NlConfig config = {}) {
  config.validate();
  if (auto k = RadialKernel{rbf_kernel.family}.smoothness(); k && config.t < *k / 4.0)
    std::fprintf(stderr,
                 "warning: t = %g is below the accuracy-order hypothesis k/2 + nu/4 for a C^%d kernel\n",
                 config.t, *k);

  NlPumInterpolant<N> model;
  model.base = fit_pum(X, F, std::move(covering), rbf_kernel, pu_family);
  model.values.assign(F.begin(), F.end());
  model.config = config;

  const auto& cov = model.base.covering;
  const std::size_t patches = cov.patch_count();
  model.indicators.assign(patches, std::numeric_limits<double>::infinity());
  std::vector<Point<N>> patch_points;
  std::vector<double> patch_values;
  for (std::size_t j = 0; j < patches; ++j) {
    const auto& ids = cov.members[j];
    if (ids.size() < 3) continue;
    patch_points.clear();
    patch_values.clear();
    for (std::int32_t i : ids) {
      patch_points.push_back(X[static_cast<std::size_t>(i)]);
      patch_values.push_back(F[static_cast<std::size_t>(i)]);
    }
    try {
      model.indicators[j] = smoothness_indicator<N>(patch_points, patch_values);
    } catch (const ConditioningError& e) {
      throw ConditioningError("patch " + std::to_string(j) + ": " + e.what());
    }
  }

  model.gammas.resize(patches);
  model.log_gammas.resize(patches);
  for (std::size_t j = 0; j < patches; ++j) {
    model.gammas[j] = std::pow(config.epsilon + model.indicators[j], -config.t);
    model.log_gammas[j] = -config.t * std::log(config.epsilon + model.indicators[j]);
  }

  const std::vector<Point<N>> probe = default_fill_probe<N>(X.size(), cov.domain);
  model.fill = fill_distance(X, std::span<const Point<N>>(probe));
  const double threshold = config.contamination_threshold.value_or(model.fill.value);
  model.contaminated = mark_contaminated(model.indicators, threshold);
  return model;
}

template <std::size_t N>
NlPumInterpolant<N> fit_nlpum(std::span<const Point<N>> X, std::span<const double> F,
                              const Box<N>& domain, const RadialKernel& rbf_kernel,
                              KernelFamily pu_family = KernelFamily::wendland2,
                              NlConfig config = {}) {
  return fit_nlpum(X, F, build_covering(X, domain), rbf_kernel, pu_family, config);
}

}  // namespace pum
