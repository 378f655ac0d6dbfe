#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fraclap/config.hpp"

namespace fraclap {

/// One thresholded quantity produced by a recipe.
struct Check {
  std::string name;
  double value = 0.0;
  /// "<=", ">=" or "<"
  std::string relation;
  double threshold = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<Check> checks;
  std::vector<std::string> files;

  bool passed() const;
};

/// Recipe names in listing order.
const std::vector<std::string>& experiment_names();

/// Annotated default configuration for a recipe.
std::string default_config(const std::string& name);

/// Runs the recipe named by the "experiment" key and writes its outputs,
/// checks.csv and manifest.json under `out`. Outputs depend only on the
/// configuration, never on the worker count.
ExperimentResult run_experiment(const Config& config, const std::filesystem::path& out);

/// Window used by the symbol recipe: 1 for |r| <= flat, 0 for |r| >= support,
/// C-infinity in between.
double smooth_window(double r, double flat, double support);

}  // namespace fraclap
