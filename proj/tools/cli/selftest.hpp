#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hacc::cli {

enum class Suite { unit, oracle, force, scaling };

// Case-insensitive; throws ConfigError for an unknown name.
Suite parse_suite(std::string_view name);

struct SelftestRow {
  std::string property;
  double measured = 0.0;
  double tolerance = 0.0;
  bool at_least = false;  // pass when measured >= tolerance instead of <=
  bool pass = false;
};

struct SelftestReport {
  Suite suite = Suite::unit;
  std::vector<SelftestRow> rows;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::vector<std::string> failures() const;
};

// FORCE writes forces.csv and SCALING writes metrics.csv into output_dir.
SelftestReport selftest(Suite suite, const std::filesystem::path& output_dir);

void print_report(std::ostream& out, const SelftestReport& report);

}  // namespace hacc::cli
