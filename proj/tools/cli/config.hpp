#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "hacc/cosmology.hpp"
#include "hacc/shortrange/forces.hpp"

namespace hacc::cli {

// Flat run configuration. Zero or negative values on the "derived" fields
// select the documented defaults at resolve time.
struct RunConfig {
  double box_length = 256.0;  // Mpc
  int n_particles = 32;       // per dimension
  int n_grid = 64;            // per dimension
  std::array<int, 3> rank_dims{1, 1, 1};
  std::array<int, 2> fft_ranks{1, 1};
  double overload_depth = 0.0;  // Mpc; 0 -> 2 r_cut

  double sigma = 0.8;
  double n_s = 3.0;
  double r_cut = 0.0;     // Mpc; 0 -> 3 grid cells
  double epsilon = -1.0;  // Mpc^2; negative -> (0.1 delta)^2
  int leaf_size = 200;
  int fit_samples = 10000;
  int fit_sources = 16;

  int n_c = 5;
  double z_in = 25.0;
  double a_final = 1.0;
  int n_steps = 30;

  double omega_m = 0.265;
  double h = 0.71;

  std::string spectrum = "power_law";  // power_law | table
  double pk_amplitude = 1.0e4;         // Mpc^3 at k = 1/Mpc
  double pk_index = -1.0;
  std::string pk_file;                  // for spectrum = table; relative to the config file

  std::uint64_t seed = 12345;
  sr::ShortRangeMode mode = sr::ShortRangeMode::tree;
  int threads = 0;  // 0 -> OpenMP default
  std::string output_dir = "hacc_out";
  int snapshot_every = 10;  // steps; the final step is always written
  int snapshot_stride = 1;  // keep every stride-th particle by id
  int pk_bins = 24;

  [[nodiscard]] CosmologyParams cosmology() const { return CosmologyParams::flat(omega_m, h); }
  [[nodiscard]] double a_in() const { return 1.0 / (1.0 + z_in); }
  [[nodiscard]] double grid_spacing() const { return box_length / n_grid; }
  [[nodiscard]] double resolved_r_cut() const { return r_cut > 0.0 ? r_cut : 3.0 * grid_spacing(); }
  [[nodiscard]] double resolved_depth() const { return overload_depth > 0.0 ? overload_depth : 2.0 * resolved_r_cut(); }
  [[nodiscard]] double resolved_epsilon() const;

  // Collects every violated precondition into one ConfigError.
  void validate() const;

  // key=value lines in a stable order; parse(echo()) reproduces the config.
  // The manifest leaves out output_dir so runs into different directories compare equal.
  [[nodiscard]] std::string echo(bool with_output_dir = true) const;
};

// Applies key=value lines ('#' comments, blank lines allowed) on top of
// `base`. Unknown keys and malformed values are collected and reported in a
// single ConfigError. Relative pk_file paths are resolved against base_dir.
RunConfig parse_config(std::istream& in, RunConfig base = {}, const std::filesystem::path& base_dir = {});

// Applies one key=value assignment; throws ConfigError on failure.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace hacc::cli
