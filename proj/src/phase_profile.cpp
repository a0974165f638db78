#include "risofdm/phase_profile.hpp"

#include <cmath>

#include "risofdm/units.hpp"

namespace risofdm {

double phase_at(const PhaseProfile& profile, double f, double f0) {
  return -2.0 * std::atan(profile.m * (f - f0) + profile.i0);
}

double linear_phase_at(const LinearProfile& profile, double f, double f0) {
  return wrap_to_pi(-profile.a * (f - f0) + profile.b0);
}

double shift_for_phase(double phase_f0) { return std::tan(-phase_f0 / 2.0); }

LinearProfile make_linear(double a, double b0) { return LinearProfile{a, wrap_to_pi(b0)}; }

}  // namespace risofdm
