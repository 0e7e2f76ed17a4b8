#include <omp.h>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "hacc/errors.hpp"
#include "run.hpp"
#include "selftest.hpp"

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const hacc::ConfigError*>(&e) != nullptr) {
    return 2;
  }
  if (dynamic_cast<const hacc::IoError*>(&e) != nullptr) {
    return 4;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hacc-mini: TreePM cosmological N-body"};
  std::string config_path;
  std::string suite;
  std::string mode;
  std::optional<int> threads;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key=value run configuration");
  app.add_option("--selftest", suite, "run a self-test suite: UNIT, ORACLE, FORCE or SCALING");
  app.add_option("--mode", mode, "short-range solver: tree or p3m");
  app.add_option("--threads", threads, "OpenMP threads");
  app.add_option("--output-dir", output_dir, "directory for run outputs");
  app.add_option("--seed", seed, "initial-condition seed");
  CLI11_PARSE(app, argc, argv);

  try {
    hacc::cli::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = hacc::cli::load_config(config_path);
    }
    if (!mode.empty()) {
      hacc::cli::set_config_value(cfg, "mode", mode);
    }
    if (threads) {
      cfg.threads = *threads;
    }
    if (output_dir) {
      cfg.output_dir = *output_dir;
    }
    if (seed) {
      cfg.seed = *seed;
    }

    if (!suite.empty()) {
      const auto s = hacc::cli::parse_suite(suite);
      if (cfg.threads > 0) {
        omp_set_num_threads(cfg.threads);
      }
      const auto report = hacc::cli::selftest(s, cfg.output_dir);
      hacc::cli::print_report(std::cout, report);
      return report.passed() ? 0 : 3;
    }
    if (config_path.empty()) {
      std::cerr << "error: --config or --selftest is required\n" << app.help();
      return 2;
    }
    hacc::cli::run(cfg, std::cout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
