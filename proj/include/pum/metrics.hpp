#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "pum/errors.hpp"

namespace pum {

struct ErrorNorms {
  double mae = 0.0;   // max_i |e_i|
  double rmse = 0.0;  // sqrt(mean e_i^2), divided by the actual probe count
};

inline ErrorNorms error_norms(std::span<const double> exact, std::span<const double> approx) {
  if (exact.size() != approx.size() || exact.empty())
    throw InputError("error_norms: need matching, nonempty vectors");
  ErrorNorms norms;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double e = std::abs(exact[i] - approx[i]);
    norms.mae = std::max(norms.mae, e);
    sum_sq += e * e;
  }
  norms.rmse = std::sqrt(sum_sq / static_cast<double>(exact.size()));
  return norms;
}

/// One row of a convergence experiment. Rates are absent at the first level
/// and undefined (not infinite) when an error vanishes.
struct LevelResult {
  int level = 0;
  double fill = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> rate_inf;
  std::optional<double> rate_2;
};

/// Fills r_l = log(E_{l-1}/E_l) / log(h_{l-1}/h_l) for both norms. Levels must
/// be sorted with strictly decreasing fill distances.
inline void fill_convergence_rates(std::vector<LevelResult>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    levels[i].rate_inf.reset();
    levels[i].rate_2.reset();
    if (i == 0) continue;
    const LevelResult& prev = levels[i - 1];
    LevelResult& cur = levels[i];
    if (!(prev.fill > cur.fill))
      throw InputError("convergence rates: fill distances must strictly decrease");
    const double denom = std::log(prev.fill / cur.fill);
    if (prev.mae > 0.0 && cur.mae > 0.0) cur.rate_inf = std::log(prev.mae / cur.mae) / denom;
    if (prev.rmse > 0.0 && cur.rmse > 0.0) cur.rate_2 = std::log(prev.rmse / cur.rmse) / denom;
  }
}

}  // namespace pum
