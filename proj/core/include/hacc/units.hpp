#pragma once

namespace hacc {

// Conversion between physical units (Mpc, M_sun, km/s, s) and the internal
// system (Mpc, M_sun, time in 1/H0).
class UnitSystem {
 public:
  static constexpr double kKmPerMpc = 3.0856775814913673e19;

  explicit UnitSystem(double h);

  [[nodiscard]] double h() const { return h_; }
  // H0 in km/s/Mpc.
  [[nodiscard]] double hubble_km_s_mpc() const { return 100.0 * h_; }
  // Internal time unit 1/H0 in seconds.
  [[nodiscard]] double time_unit_seconds() const;
  // Internal velocity unit Mpc * H0 in km/s.
  [[nodiscard]] double velocity_unit_km_s() const { return 100.0 * h_; }

  [[nodiscard]] double velocity_to_internal(double km_s) const { return km_s / velocity_unit_km_s(); }
  [[nodiscard]] double velocity_from_internal(double v) const { return v * velocity_unit_km_s(); }
  [[nodiscard]] double time_to_internal(double seconds) const { return seconds / time_unit_seconds(); }
  [[nodiscard]] double time_from_internal(double t) const { return t * time_unit_seconds(); }
  // Lengths and masses are already Mpc and M_sun.
  [[nodiscard]] double length_to_internal(double mpc) const { return mpc; }
  [[nodiscard]] double mass_to_internal(double msun) const { return msun; }

 private:
  double h_;
};

}  // namespace hacc
