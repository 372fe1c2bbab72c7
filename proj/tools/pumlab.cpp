// pumlab: scattered-data interpolation experiments with PUM and NL-PUM.
// Subcommands: convergence, surface, indicators. All outputs are CSV with a
// single header row; wall-clock logs go to standard error.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "pum/pum.hpp"

namespace {

void parse_levels(const std::string& text, int& lo, int& hi) {
  const auto sep = text.find("..");
  try {
    if (sep == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, sep));
      hi = std::stoi(text.substr(sep + 2));
    }
  } catch (const std::exception&) {
    throw pum::InputError("cannot parse levels \"" + text + "\" (expected L or A..B)");
  }
}

void add_common_options(CLI::App* cmd, pum::ExperimentConfig& config, std::string& function,
                        std::string& nodes, std::string& levels) {
  cmd->add_option("--function", function, "test function: franke, f1, f2, f3, z");
  cmd->add_option("--nodes", nodes, "data sites: grid or halton")
      ->check(CLI::IsMember({"grid", "halton"}, CLI::ignore_case));
  cmd->add_option("--levels", levels, "grid level L or range A..B (N = (2^l+1)^2 sites)");
  cmd->add_option("--rbf-kernel", config.rbf_kernel, "kernel family for the local RBF fits");
  cmd->add_option("--rbf-shape", config.rbf_shape, "shape parameter of the RBF kernel");
  cmd->add_option("--pu-kernel", config.pu_kernel, "compactly supported family for the weights");
  cmd->add_flag("--nl", config.nl, "use the nonlinear weights (NL-PUM)");
  cmd->add_option("--t", config.nl_params.t, "nonlinear weight exponent");
  cmd->add_option("--epsilon", config.nl_params.epsilon, "guard term in the weight denominator");
  cmd->add_option("--weight-threshold", config.nl_params.weight_threshold,
                  "kernel-value threshold defining the significant patches");
  cmd->add_option("--contamination-threshold",
                  [&config](const CLI::results_t& results) {
                    config.nl_params.contamination_threshold = std::stod(results[0]);
                    return true;
                  },
                  "indicator threshold for contaminated patches (default: fill distance)");
  cmd->add_option("--probe", config.probe, "probe grid side");
  cmd->add_option("--out", config.out, "output path prefix");
  cmd->add_option("--nodes-file", config.nodes_file, "CSV point set (x,y[,value]) overriding --nodes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition of unity interpolation experiments (PUM / NL-PUM)"};
  app.require_subcommand(1);
  app.set_config("--config");

  pum::ExperimentConfig config;
  std::string function = "franke";
  std::string nodes = "grid";
  std::string levels;

  CLI::App* convergence =
      app.add_subcommand("convergence", "multi-level error norms and empirical rates");
  CLI::App* surface = app.add_subcommand("surface", "dense evaluation with point classification");
  CLI::App* indicators = app.add_subcommand("indicators", "per-patch smoothness indicators");
  for (CLI::App* cmd : {convergence, surface, indicators})
    add_common_options(cmd, config, function, nodes, levels);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    config.function = pum::test_function_from_name(function);
    config.nodes = nodes == "halton" ? pum::ExperimentConfig::Nodes::halton
                                     : pum::ExperimentConfig::Nodes::grid;
    if (!levels.empty()) {
      if (convergence->parsed()) {
        parse_levels(levels, config.level_min, config.level_max);
      } else {
        int lo = 0, hi = 0;
        parse_levels(levels, lo, hi);
        if (lo != hi) throw pum::InputError("this experiment takes a single level");
        config.level = lo;
      }
    }
    config.validate();

    if (convergence->parsed()) {
      const auto report = pum::run_convergence(config);
      std::printf("wrote %s (%zu levels)\n", report.path.c_str(), report.rows.size());
    } else if (surface->parsed()) {
      const auto report = pum::run_surface(config);
      std::printf("wrote %s, %s, %s\n", report.surface_path.c_str(),
                  report.classification_path.c_str(), report.summary_path.c_str());
      std::printf("overshoot %.3e undershoot %.3e discontinuity points %zu\n", report.overshoot,
                  report.undershoot, report.discontinuity_points);
    } else {
      const auto report = pum::run_indicators(config);
      std::printf("wrote %s (h = %.6e, %zu contaminated patches)\n", report.path.c_str(), report.h,
                  report.flagged);
    }
  } catch (const pum::InputError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
