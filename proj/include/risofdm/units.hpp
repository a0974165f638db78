#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risofdm {

using cd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Input that violates a documented precondition (bad shapes, ranges, files).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerically infeasible request, e.g. a rank-deficient zero-forcing problem.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Maps an angle into (-pi, pi].
double wrap_to_pi(double angle);

// Maps an angle into [0, 2*pi).
double wrap_to_2pi(double angle);

// Smallest signed angular distance a - b, in (-pi, pi].
double circular_difference(double a, double b);

double wavelength(double frequency_hz);

// Gain of an antenna with the given half-power beamwidths in radians,
// using the aperture approximation 4*pi / (theta * phi).
double gain_from_beamwidths(double theta_bw, double phi_bw);

}  // namespace risofdm
