#include "qwalk/phase.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

CosSin cos_sin_2pi(double phi) {
  // 2*pi*phi = (pi/2) * (quarter + rest), |rest| <= 1/2
  const double turns = 4.0 * phi;
  const double quarter = std::nearbyint(turns);
  const double rest = turns - quarter;
  const double angle = rest * (std::numbers::pi / 2.0);
  const double c = rest == 0.0 ? 1.0 : std::cos(angle);
  const double s = rest == 0.0 ? 0.0 : std::sin(angle);

  const long q = static_cast<long>(std::fmod(quarter, 4.0) + 4.0) % 4;
  switch (q) {
    case 0:
      return {c, s};
    case 1:
      return {-s, c};
    case 2:
      return {-c, -s};
    default:
      return {s, -c};
  }
}

Complex unit_phase(double phi) {
  const auto [c, s] = cos_sin_2pi(phi);
  return {c, s};
}

void require_open_unit_phase(double phi) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw DomainError("phase phi must lie in the open interval (0,1), got " + std::to_string(phi));
  }
}

}  // namespace qwalk
