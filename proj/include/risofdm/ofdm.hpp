#pragma once

#include <cstddef>

#include "risofdm/units.hpp"

namespace risofdm {

// Sub-carrier layout and link budget of one OFDM symbol.
// Sub-carrier k (1-based) sits at f0 + delta_f * (k - n_s / 2); the accessors
// below take a 0-based index.
struct OfdmGrid {
  double f0 = 2.5e9;
  double delta_f = 200e3;
  std::size_t n_s = 256;
  double total_power = 1.2589254117941673e-3;  // 1 dBm
  double noise_psd = 3.9810717055349565e-21;   // -174 dBm/Hz

  void validate() const {
    if (n_s < 1) throw ValidationError("OfdmGrid: n_s must be at least 1");
    if (!(delta_f > 0.0)) throw ValidationError("OfdmGrid: delta_f must be positive");
    if (!(f0 > 0.0)) throw ValidationError("OfdmGrid: f0 must be positive");
    if (!(total_power > 0.0)) throw ValidationError("OfdmGrid: total_power must be positive");
    if (!(noise_psd > 0.0)) throw ValidationError("OfdmGrid: noise_psd must be positive");
  }

  double frequency(std::size_t k) const {
    return f0 + delta_f * (static_cast<double>(k + 1) - static_cast<double>(n_s) / 2.0);
  }

  // Wavenumber 2*pi*f_k/c.
  double wavenumber(std::size_t k) const { return kTwoPi * frequency(k) / kSpeedOfLight; }

  // Noise power collected by one sub-carrier.
  double noise_per_subcarrier() const { return noise_psd * delta_f; }

  double bandwidth() const { return delta_f * static_cast<double>(n_s); }
};

}  // namespace risofdm
