#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "pum/errors.hpp"
#include "pum/kernels.hpp"
#include "pum/point.hpp"

namespace pum {

/// Points closer than this are treated as duplicates (the Gram matrix would be
/// numerically singular).
inline constexpr double kDuplicateTolerance = 1e-14;

/// Diagonal jitter levels tried, as multiples of mean(diag(A)).
inline constexpr double kJitterLadder[] = {0.0, 1e-12, 1e-10, 1e-8};

/// Local RBF interpolant on one patch: x -> sum_i coeffs[i] * phi(|x - nodes[i]|).
template <std::size_t N>
struct LocalRbf {
  std::vector<Point<N>> nodes;
  std::vector<double> coeffs;
  RadialKernel kernel;
  double jitter = 0.0;  // diagonal regularization actually applied

  double operator()(const Point<N>& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      acc += coeffs[i] * kernel(distance(x, nodes[i]));
    return acc;
  }

  std::size_t size() const { return nodes.size(); }
};

/// Solves the symmetric interpolation system A c = f, A_ik = phi(|x_i - x_k|),
/// with a Cholesky factorization. On factorization failure the diagonal is
/// jittered by escalating multiples of mean(diag(A)) before giving up.
template <std::size_t N>
LocalRbf<N> fit_rbf(std::span<const Point<N>> points, std::span<const double> values,
                    const RadialKernel& kernel) {
  const std::size_t n = points.size();
  if (n == 0 || values.size() != n)
    throw InputError("fit_rbf: need matching, nonempty points and values");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (distance(points[i], points[k]) < kDuplicateTolerance) {
        std::ostringstream msg;
        msg << "fit_rbf: points " << i << " and " << k << " are duplicates";
        throw InputError(msg.str());
      }

  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    gram(i, i) = kernel(0.0);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double value = kernel(distance(points[i], points[k]));
      gram(i, k) = value;
      gram(k, i) = value;
    }
  }
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs(i) = values[i];

  const double mean_diag = gram.trace() / static_cast<double>(n);

  for (double level : kJitterLadder) {
    const double jitter = level * mean_diag;
    Eigen::MatrixXd regularized = gram;
    if (jitter > 0.0) regularized.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(regularized);
    if (llt.info() != Eigen::Success) continue;
    Eigen::VectorXd solution = llt.solve(rhs);
    if (!solution.allFinite()) continue;

    LocalRbf<N> model;
    model.nodes.assign(points.begin(), points.end());
    model.coeffs.assign(solution.data(), solution.data() + n);
    model.kernel = kernel;
    model.jitter = jitter;
    return model;
  }

  std::ostringstream msg;
  msg << "fit_rbf: Cholesky failed for " << n << " nodes (" << family_name(kernel.family)
      << ", shape " << kernel.shape << ") after jitter levels 1e-12, 1e-10, 1e-8";
  throw ConditioningError(msg.str());
}

template <std::size_t N>
LocalRbf<N> fit_rbf(const std::vector<Point<N>>& points, const std::vector<double>& values,
                    const RadialKernel& kernel) {
  return fit_rbf(std::span<const Point<N>>(points), std::span<const double>(values), kernel);
}

}  // namespace pum
