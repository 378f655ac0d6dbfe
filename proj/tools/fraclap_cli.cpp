// fraclap: experiment driver.
//
//   fraclap list [--json]
//   fraclap run  (--config FILE | NAME) [--set key=value]... [--out DIR] [--threads K] [--check]
//   fraclap check [--out DIR] [--threads K]
//
// Exit codes: 0 ok, 2 bad command line or config, 3 numerical/library failure,
// 4 a threshold check failed (only with --check, or under `check`).

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fraclap/config.hpp"
#include "fraclap/error.hpp"
#include "fraclap/experiments.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/simd/kernels.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCheck = 4;

void print_checks(const fraclap::ExperimentResult& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << r.experiment << '/' << c.name << "  " << c.value << ' '
              << c.relation << ' ' << c.threshold << '\n';
  }
}

fraclap::Config build_config(const std::string& path, const std::string& name, const std::vector<std::string>& sets) {
  fraclap::Config cfg;
  if (!path.empty()) {
    cfg = fraclap::Config::load(path);
  } else if (!name.empty()) {
    const auto& names = fraclap::experiment_names();
    if (name != "identity-check" && std::find(names.begin(), names.end(), name) == names.end())
      fraclap::fail(fraclap::ErrorKind::Parse, "unknown experiment '" + name + "' (see `fraclap list`)");
    cfg = fraclap::Config::parse(fraclap::default_config(name), name + " (defaults)");
  } else {
    fraclap::fail(fraclap::ErrorKind::Parse, "run: give --config FILE or an experiment name");
  }
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
      fraclap::fail(fraclap::ErrorKind::Parse, "--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fraclap: fractional Laplacian experiments on bounded domains"};
  app.require_subcommand(1);

  int threads = 1;
  std::string out = "fraclap_out";
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--out", out, "output directory");

  bool as_json = false;
  auto* list = app.add_subcommand("list", "print recipe names");
  list->add_flag("--json", as_json, "print a JSON array");

  std::string config_path, name;
  std::vector<std::string> sets;
  bool check_mode = false;
  auto* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
  run->add_option("name", name, "recipe name, run with its defaults");
  run->add_option("--set", sets, "override a config key (section.key=value)");
  run->add_flag("--check", check_mode, "exit 4 when a threshold check fails");
  run->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
  run->add_option("--out", out, "output directory");

  auto* check = app.add_subcommand("check", "run every recipe with defaults and its thresholds");
  check->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
  check->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != static_cast<int>(CLI::ExitCodes::RequiredError) || argc > 1) std::cerr << app.help();
    return kExitParse;
  }

  try {
    fraclap::set_thread_count(threads);

    if (list->parsed()) {
      const auto& names = fraclap::experiment_names();
      if (as_json) {
        std::cout << nlohmann::json(names).dump() << '\n';
      } else {
        for (const auto& n : names) std::cout << n << '\n';
      }
      return 0;
    }

    if (run->parsed()) {
      const fraclap::Config cfg = build_config(config_path, name, sets);
      const auto result = fraclap::run_experiment(cfg, out);
      print_checks(result);
      std::cout << "wrote " << result.files.size() << " files to " << out << '\n';
      return check_mode && !result.passed() ? kExitCheck : 0;
    }

    bool all = true;
    for (const auto& n : fraclap::experiment_names()) {
      const auto cfg = fraclap::Config::parse(fraclap::default_config(n), n + " (defaults)");
      const auto result = fraclap::run_experiment(cfg, fs::path(out) / n);
      print_checks(result);
      all = all && result.passed();
    }
    return all ? 0 : kExitCheck;
  } catch (const fraclap::Error& e) {
    std::cerr << "fraclap: " << e.what() << '\n';
    return e.kind() == fraclap::ErrorKind::Parse ? kExitParse : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "fraclap: " << e.what() << '\n';
    return kExitNumeric;
  }
}
