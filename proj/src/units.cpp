#include "risofdm/units.hpp"

#include <cmath>

namespace risofdm {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) {
  if (!(watt > 0.0)) throw ValidationError("watt_to_dbm: power must be positive");
  return 10.0 * std::log10(watt) + 30.0;
}

double wrap_to_pi(double angle) {
  double w = std::remainder(angle, kTwoPi);  // in [-pi, pi]
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double wrap_to_2pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

double circular_difference(double a, double b) { return wrap_to_pi(a - b); }

double wavelength(double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw ValidationError("wavelength: frequency must be positive");
  return kSpeedOfLight / frequency_hz;
}

double gain_from_beamwidths(double theta_bw, double phi_bw) {
  if (!(theta_bw > 0.0) || !(phi_bw > 0.0)) {
    throw ValidationError("gain_from_beamwidths: beamwidths must be positive");
  }
  return 4.0 * kPi / (theta_bw * phi_bw);
}

}  // namespace risofdm
