#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "pum/csv.hpp"
#include "pum/metrics.hpp"
#include "pum/nonlinear.hpp"
#include "pum/sampling.hpp"

namespace pum {

/// Configuration shared by the experiment runners. Defaults mirror the
/// convergence and discontinuity setups: grid nodes, Matern-2 RBF with unit
/// shape, Wendland-2 partition weights.
struct ExperimentConfig {
  enum class Nodes { grid, halton };

  TestFunction function = TestFunction::franke;
  Nodes nodes = Nodes::grid;
  int level_min = 4;  // convergence range
  int level_max = 7;
  int level = 6;  // surface/indicators level: (2^6+1)^2 = 65^2 data sites
  std::string rbf_kernel = "matern2";
  double rbf_shape = 1.0;
  std::string pu_kernel = "wendland2";
  bool nl = false;
  NlConfig nl_params;
  int probe = 0;  // probe grid side; 0 = per-experiment default (60 / 120)
  std::string out;  // output path prefix
  std::string nodes_file;  // optional CSV with data sites (surface/indicators)

  void validate() const {
    if (level_min < 3 || level_max > 9 || level_min > level_max)
      throw InputError("config: levels must satisfy 3 <= A <= B <= 9");
    if (level < 3 || level > 9) throw InputError("config: level must lie in [3, 9]");
    if (probe != 0 && probe < 8) throw InputError("config: probe grid side must be at least 8");
    make_kernel(rbf_kernel, rbf_shape);
    if (!RadialKernel{family_from_name(pu_kernel)}.compact_support())
      throw InputError("config: partition weights need a compactly supported kernel");
    nl_params.validate();
  }

  std::string method_name() const { return nl ? "nlpum" : "pum"; }
  std::string nodes_name() const { return nodes == Nodes::grid ? "grid" : "halton"; }
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

struct PhaseLog {
  std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();
  void next(const char* phase) {
    std::fprintf(stderr, "[pum] %s: %.1f ms\n", phase, elapsed_ms(mark));
    mark = std::chrono::steady_clock::now();
  }
};

inline std::vector<Point2> experiment_nodes(const ExperimentConfig& config, int level) {
  const std::size_t side = (std::size_t{1} << level) + 1;
  return config.nodes == ExperimentConfig::Nodes::grid ? grid_points(level)
                                                       : halton<2>(side * side);
}

inline std::string rate_cell(const std::optional<double>& rate) {
  return rate ? csv_number(*rate) : std::string("-");
}

}  // namespace detail

struct ConvergenceReport {
  std::vector<LevelResult> rows;
  std::string path;
};

/// Multi-level convergence experiment: fits the chosen method per level,
/// evaluates on the probe grid, and writes one row per level with measured
/// fill distances, error norms and empirical rates.
inline ConvergenceReport run_convergence(const ExperimentConfig& config) {
  config.validate();
  if (has_discontinuity(config.function))
    std::fprintf(stderr, "warning: convergence experiment with discontinuous function %s\n",
                 std::string(test_function_name(config.function)).c_str());

  const RadialKernel rbf = make_kernel(config.rbf_kernel, config.rbf_shape);
  const KernelFamily pu = family_from_name(config.pu_kernel);
  const int probe_side = config.probe > 0 ? config.probe : 60;
  const auto probe = box_grid(Box<2>::unit(), static_cast<std::size_t>(probe_side));

  ConvergenceReport report;
  for (int level = config.level_min; level <= config.level_max; ++level) {
    detail::PhaseLog log;
    const std::vector<Point2> X = detail::experiment_nodes(config, level);
    const std::vector<double> F = sample_values(config.function, X);
    log.next("nodes");

    LevelResult row;
    row.level = level;

    std::vector<double> approx(probe.size());
    if (config.nl) {
      const auto model = fit_nlpum<2>(X, F, Box<2>::unit(), rbf, pu, config.nl_params);
      row.fill = model.fill.value;
      log.next("fit");
      for (std::size_t k = 0; k < probe.size(); ++k) approx[k] = model.eval(probe[k]).first;
    } else {
      const auto model = fit_pum<2>(X, F, Box<2>::unit(), rbf, pu);
      const auto fill_probe = default_fill_probe<2>(X.size());
      row.fill = fill_distance<2>(X, fill_probe).value;
      log.next("fit");
      for (std::size_t k = 0; k < probe.size(); ++k) approx[k] = model(probe[k]);
    }
    log.next("eval");

    std::vector<double> exact(probe.size());
    for (std::size_t k = 0; k < probe.size(); ++k) exact[k] = eval_test_function(config.function, probe[k]);
    const ErrorNorms norms = error_norms(exact, approx);
    row.mae = norms.mae;
    row.rmse = norms.rmse;
    report.rows.push_back(row);
    std::fprintf(stderr, "[pum] level %d: n=%zu mae=%.4e rmse=%.4e\n", level, X.size(), row.mae,
                 row.rmse);
  }
  fill_convergence_rates(report.rows);

  report.path = config.out + "convergence.csv";
  std::ofstream out(report.path);
  if (!out) throw InputError("cannot write " + report.path);
  out << "level,h,mae,rate_inf,rmse,rate_2,method,kernel_rbf,kernel_pu,nodes\n";
  for (const LevelResult& row : report.rows) {
    out << row.level << ',' << csv_number(row.fill) << ',' << csv_number(row.mae) << ','
        << detail::rate_cell(row.rate_inf) << ',' << csv_number(row.rmse) << ','
        << detail::rate_cell(row.rate_2) << ',' << config.method_name() << ','
        << config.rbf_kernel << ',' << config.pu_kernel << ',' << config.nodes_name() << '\n';
  }
  return report;
}

struct SurfaceReport {
  std::size_t n_data = 0;
  int probe_side = 0;
  double data_min = 0.0, data_max = 0.0;
  double overshoot = 0.0, undershoot = 0.0;  // max excursions beyond the data range
  double excursion_at_discontinuity = 0.0;   // same, over discontinuity-classified points
  std::size_t discontinuity_points = 0;
  std::size_t uncovered_points = 0;
  std::size_t nearest_fallbacks = 0;
  std::string surface_path, summary_path, classification_path;

  double excursion() const { return std::max(overshoot, undershoot); }
};

/// Fits on the configured node set (65^2 by default), evaluates PUM or NL-PUM
/// on the probe grid, and writes the per-point surface, the classification
/// mask, and an overshoot summary measured against the data value range.
inline SurfaceReport run_surface(const ExperimentConfig& config) {
  config.validate();
  const RadialKernel rbf = make_kernel(config.rbf_kernel, config.rbf_shape);
  const KernelFamily pu = family_from_name(config.pu_kernel);

  detail::PhaseLog log;
  std::vector<Point2> X;
  std::vector<double> F;
  if (!config.nodes_file.empty()) {
    PointSet set = read_points_csv(config.nodes_file);
    X = std::move(set.points);
    F = set.values ? std::move(*set.values) : sample_values(config.function, X);
  } else {
    X = detail::experiment_nodes(config, config.level);
    F = sample_values(config.function, X);
  }
  log.next("nodes");

  // The nonlinear model embeds the linear one, so the indicator pass runs in
  // both modes and the kind column is always available.
  const auto model = fit_nlpum<2>(X, F, Box<2>::unit(), rbf, pu, config.nl_params);
  log.next("fit");

  SurfaceReport report;
  report.n_data = X.size();
  report.probe_side = config.probe > 0 ? config.probe : 120;
  report.data_min = *std::min_element(F.begin(), F.end());
  report.data_max = *std::max_element(F.begin(), F.end());

  const auto probe = box_grid(Box<2>::unit(), static_cast<std::size_t>(report.probe_side));
  report.surface_path = config.out + "surface.csv";
  report.classification_path = config.out + "classification.csv";
  std::ofstream surface(report.surface_path);
  std::ofstream classes(report.classification_path);
  if (!surface || !classes) throw InputError("cannot write surface outputs under prefix " + config.out);
  surface << "x,y,value,kind\n";
  classes << "x,y,value,kind,n_active,n_contaminated\n";

  for (const Point2& q : probe) {
    double value = std::numeric_limits<double>::quiet_NaN();
    const char* kind = "uncovered";
    std::size_t n_active = 0, n_contaminated = 0;
    try {
      ShepardStats stats;
      if (config.nl) {
        auto [v, cls] = model.eval(q, &stats);
        value = v;
        kind = cls.kind == PointKind::discontinuity ? "discontinuity" : "regular";
        n_active = cls.active.size();
        n_contaminated = cls.contaminated_active.size();
        if (cls.kind == PointKind::discontinuity) {
          ++report.discontinuity_points;
          const double beyond =
              std::max(value - report.data_max, report.data_min - value);
          report.excursion_at_discontinuity = std::max(report.excursion_at_discontinuity, beyond);
        }
        if (stats.nearest_fallback) ++report.nearest_fallbacks;
      } else {
        value = model.base(q);
        const PointClass cls = model.classify(q);
        kind = cls.kind == PointKind::discontinuity ? "discontinuity" : "regular";
        n_active = cls.active.size();
        n_contaminated = cls.contaminated_active.size();
        if (cls.kind == PointKind::discontinuity) ++report.discontinuity_points;
      }
      report.overshoot = std::max(report.overshoot, value - report.data_max);
      report.undershoot = std::max(report.undershoot, report.data_min - value);
    } catch (const CoveringError&) {
      ++report.uncovered_points;
    }
    surface << csv_number(q[0]) << ',' << csv_number(q[1]) << ',' << csv_number(value) << ','
            << kind << '\n';
    classes << csv_number(q[0]) << ',' << csv_number(q[1]) << ',' << csv_number(value) << ','
            << kind << ',' << n_active << ',' << n_contaminated << '\n';
  }
  report.overshoot = std::max(report.overshoot, 0.0);
  report.undershoot = std::max(report.undershoot, 0.0);
  log.next("eval");
  if (report.uncovered_points > 0)
    std::fprintf(stderr, "warning: %zu probe points were covered by no patch\n",
                 report.uncovered_points);

  report.summary_path = config.out + "surface_summary.csv";
  std::ofstream summary(report.summary_path);
  if (!summary) throw InputError("cannot write " + report.summary_path);
  summary << "method,function,nodes,n_data,probe_side,data_min,data_max,overshoot,undershoot,"
             "excursion_at_discontinuity,discontinuity_points,uncovered_points,nearest_fallbacks\n";
  summary << config.method_name() << ',' << test_function_name(config.function) << ','
          << config.nodes_name() << ',' << report.n_data << ',' << report.probe_side << ','
          << csv_number(report.data_min) << ',' << csv_number(report.data_max) << ','
          << csv_number(report.overshoot) << ',' << csv_number(report.undershoot) << ','
          << csv_number(report.excursion_at_discontinuity) << ',' << report.discontinuity_points
          << ',' << report.uncovered_points << ',' << report.nearest_fallbacks << '\n';
  return report;
}

struct IndicatorReport {
  double h = 0.0;
  double max_indicator = 0.0;
  std::size_t flagged = 0;
  std::vector<double> indicators;
  std::vector<std::uint8_t> contaminated;
  std::string path;
};

/// Writes the per-patch covering summary: centers, radius, occupancy, the
/// smoothness indicators and contamination flags, plus the measured fill
/// distance used as the default threshold.
inline IndicatorReport run_indicators(const ExperimentConfig& config) {
  config.validate();
  const RadialKernel rbf = make_kernel(config.rbf_kernel, config.rbf_shape);
  const KernelFamily pu = family_from_name(config.pu_kernel);

  detail::PhaseLog log;
  std::vector<Point2> X;
  std::vector<double> F;
  if (!config.nodes_file.empty()) {
    PointSet set = read_points_csv(config.nodes_file);
    X = std::move(set.points);
    F = set.values ? std::move(*set.values) : sample_values(config.function, X);
  } else {
    X = detail::experiment_nodes(config, config.level);
    F = sample_values(config.function, X);
  }
  const auto model = fit_nlpum<2>(X, F, Box<2>::unit(), rbf, pu, config.nl_params);
  log.next("fit");

  IndicatorReport report;
  report.h = model.fill.value;
  report.indicators = model.indicators;
  report.contaminated = model.contaminated;
  for (std::size_t j = 0; j < model.indicators.size(); ++j) {
    if (model.base.active[j] && std::isfinite(model.indicators[j]))
      report.max_indicator = std::max(report.max_indicator, model.indicators[j]);
    if (model.contaminated[j]) ++report.flagged;
  }

  report.path = config.out + "indicators.csv";
  std::ofstream out(report.path);
  if (!out) throw InputError("cannot write " + report.path);
  out << "center_x,center_y,radius,count,indicator,contaminated,h\n";
  const auto& cov = model.covering();
  for (std::size_t j = 0; j < cov.patch_count(); ++j) {
    out << csv_number(cov.centers[j][0]) << ',' << csv_number(cov.centers[j][1]) << ','
        << csv_number(cov.radius) << ',' << cov.count(j) << ','
        << csv_number(model.indicators[j]) << ',' << int(model.contaminated[j]) << ','
        << csv_number(report.h) << '\n';
  }
  return report;
}

}  // namespace pum
