#pragma once

#include <vector>

namespace risofdm {

// State of one resonant unit cell: phi(f) = -2 atan(m (f - f0) + i0).
struct PhaseProfile {
  double m = 0.0;   // 1/Hz
  double i0 = 0.0;  // dimensionless
};

// Straight-line phase law phi(f) = -a (f - f0) + b0, b0 stored in [-pi, pi].
struct LinearProfile {
  double a = 0.0;   // rad/Hz
  double b0 = 0.0;  // rad
};

double phase_at(const PhaseProfile& profile, double f, double f0);

// Value of the linear law at f wrapped into (-pi, pi].
double linear_phase_at(const LinearProfile& profile, double f, double f0);

// Shift that makes the profile pass through phase_f0 at the carrier.
double shift_for_phase(double phase_f0);

LinearProfile make_linear(double a, double b0);

}  // namespace risofdm
