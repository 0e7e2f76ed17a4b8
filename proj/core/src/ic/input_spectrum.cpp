#include "hacc/ic/input_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "hacc/errors.hpp"

namespace hacc::ic {

InputPowerSpectrum InputPowerSpectrum::power_law(double amplitude, double index) {
  if (!(amplitude >= 0.0) || !std::isfinite(index)) {
    throw ConfigError("power-law spectrum needs a non-negative amplitude and a finite index");
  }
  InputPowerSpectrum s;
  s.amplitude_ = amplitude;
  s.index_ = index;
  return s;
}

InputPowerSpectrum InputPowerSpectrum::tabulated(std::vector<double> k, std::vector<double> p) {
  if (k.size() != p.size() || k.size() < 2) {
    throw ConfigError("tabulated spectrum needs at least two (k, P) rows");
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!(k[i] > 0.0) || !std::isfinite(k[i])) {
      throw ConfigError("tabulated spectrum: k must be positive and finite");
    }
    if (i > 0 && !(k[i] > k[i - 1])) {
      throw ConfigError("tabulated spectrum: k must be strictly increasing");
    }
    if (!(p[i] >= 0.0) || !std::isfinite(p[i])) {
      throw ConfigError("tabulated spectrum: P must be non-negative and finite");
    }
  }
  InputPowerSpectrum s;
  s.k_ = std::move(k);
  s.p_ = std::move(p);
  s.log_k_.resize(s.k_.size());
  s.log_p_.resize(s.p_.size());
  for (std::size_t i = 0; i < s.k_.size(); ++i) {
    s.log_k_[i] = std::log(s.k_[i]);
    s.log_p_[i] = s.p_[i] > 0.0 ? std::log(s.p_[i]) : -std::numeric_limits<double>::infinity();
  }
  return s;
}

double InputPowerSpectrum::operator()(double k) const {
  if (!(k > 0.0)) {
    return 0.0;
  }
  if (k_.empty()) {
    return amplitude_ == 0.0 ? 0.0 : amplitude_ * std::pow(k, index_);
  }
  if (k < k_.front() || k > k_.back()) {
    return 0.0;
  }
  const auto it = std::upper_bound(k_.begin(), k_.end(), k);
  const std::size_t hi = std::min(static_cast<std::size_t>(it - k_.begin()), k_.size() - 1);
  const std::size_t lo = hi - 1;
  if (p_[lo] == 0.0 || p_[hi] == 0.0) {
    // log interpolation is undefined across a zero; fall back to linear.
    const double t = (k - k_[lo]) / (k_[hi] - k_[lo]);
    return p_[lo] + t * (p_[hi] - p_[lo]);
  }
  const double t = (std::log(k) - log_k_[lo]) / (log_k_[hi] - log_k_[lo]);
  return std::exp(log_p_[lo] + t * (log_p_[hi] - log_p_[lo]));
}

void InputPowerSpectrum::scale(double factor) {
  if (!(factor >= 0.0)) {
    throw ConfigError("spectrum scale factor must be non-negative");
  }
  amplitude_ *= factor;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    p_[i] *= factor;
    log_p_[i] = p_[i] > 0.0 ? std::log(p_[i]) : -std::numeric_limits<double>::infinity();
  }
}

InputPowerSpectrum parse_power_spectrum(std::istream& in) {
  std::vector<double> k, p;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream row(line);
    double kv = 0.0;
    double pv = 0.0;
    if (!(row >> kv)) {
      std::string rest;
      row.clear();
      if (row >> rest) {
        throw ConfigError("power spectrum line " + std::to_string(line_no) + ": expected two numbers");
      }
      continue;
    }
    std::string extra;
    if (!(row >> pv) || (row >> extra)) {
      throw ConfigError("power spectrum line " + std::to_string(line_no) + ": expected two numbers");
    }
    k.push_back(kv);
    p.push_back(pv);
  }
  try {
    return InputPowerSpectrum::tabulated(std::move(k), std::move(p));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("power spectrum table: ") + e.what());
  }
}

}  // namespace hacc::ic
