#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "hacc/analysis/metrics.hpp"
#include "hacc/analysis/power_spectrum.hpp"
#include "hacc/ic/input_spectrum.hpp"
#include "hacc/shortrange/kernel.hpp"

namespace hacc::cli {

struct RunResult {
  sr::ShortRangeKernel kernel;
  std::vector<int> snapshot_steps;
  std::vector<analysis::PowerSpectrumResult> spectra;  // one per snapshot
  std::vector<analysis::MetricsRecord> metrics;        // one per step
  std::string manifest;
  std::string outputs_hash;
};

// The configured input spectrum; reads pk_file for spectrum = table.
ic::InputPowerSpectrum load_spectrum(const RunConfig& cfg);

// IC -> steps -> snapshots, P(k) and metrics in cfg.output_dir, then a
// manifest. Errors are rethrown with the failing phase in the message.
RunResult run(const RunConfig& cfg, std::ostream& log);

}  // namespace hacc::cli
