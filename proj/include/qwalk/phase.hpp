#pragma once

#include <complex>

namespace qwalk {

using Complex = std::complex<double>;

struct CosSin {
  double cos;
  double sin;
};

// cos(2*pi*phi), sin(2*pi*phi) with the argument reduced by quarter turns first, so
// phi = k/4 yields exact 0 and +-1 values.
CosSin cos_sin_2pi(double phi);

// omega = exp(2*pi*i*phi).
Complex unit_phase(double phi);

// Throws DomainError unless 0 < phi < 1.
void require_open_unit_phase(double phi);

}  // namespace qwalk
