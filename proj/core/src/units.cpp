#include "hacc/units.hpp"

#include "hacc/errors.hpp"

namespace hacc {

UnitSystem::UnitSystem(double h) : h_(h) {
  if (!(h > 0.0)) {
    throw ConfigError("UnitSystem: h must be positive");
  }
}

double UnitSystem::time_unit_seconds() const { return kKmPerMpc / (100.0 * h_); }

}  // namespace hacc
