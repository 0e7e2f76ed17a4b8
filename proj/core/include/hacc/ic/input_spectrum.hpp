#pragma once

#include <istream>
#include <vector>

namespace hacc::ic {

// Linear matter power spectrum at a = 1, P(k) in Mpc^3 with k in 1/Mpc.
// Either a power law A k^n or a table interpolated linearly in log-log space.
// A table returns 0 outside its k range.
class InputPowerSpectrum {
 public:
  static InputPowerSpectrum power_law(double amplitude, double index);
  // Throws ConfigError unless k is strictly increasing and positive and P >= 0.
  static InputPowerSpectrum tabulated(std::vector<double> k, std::vector<double> p);
  static InputPowerSpectrum zero() { return power_law(0.0, 0.0); }

  [[nodiscard]] double operator()(double k) const;
  [[nodiscard]] bool is_tabulated() const { return !k_.empty(); }
  [[nodiscard]] const std::vector<double>& table_k() const { return k_; }
  [[nodiscard]] const std::vector<double>& table_p() const { return p_; }

  // Multiplies the spectrum by factor.
  void scale(double factor);

 private:
  double amplitude_ = 0.0;
  double index_ = 0.0;
  std::vector<double> k_, p_;
  std::vector<double> log_k_, log_p_;
};

// Two whitespace-separated columns (k [1/Mpc], P [Mpc^3]); '#' starts a
// comment. Throws ConfigError naming the offending line.
InputPowerSpectrum parse_power_spectrum(std::istream& in);

}  // namespace hacc::ic
