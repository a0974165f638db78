#pragma once

#include <vector>

#include "risofdm/geometry.hpp"
#include "risofdm/ofdm.hpp"
#include "risofdm/units.hpp"

namespace risofdm {

// Per-element, per-sub-carrier small-scale terms of a Rician draw.
// Matrices are stored element-major: entry (j, k) lives at j * n_s + k.
struct SmallScaleTerms {
  double los_scale = 1.0;
  std::vector<cd> chi1;   // Tx-RIS diffuse term
  std::vector<cd> chi2;   // RIS-UE diffuse term
  std::vector<cd> chi_d;  // direct-link diffuse term, one per sub-carrier (may be empty)
};

struct ChannelOptions {
  bool include_direct = false;
  // Rotates the direct term by tx_common_phase_alignment so that it shares the
  // common phase of the reflected paths.
  bool align_direct = false;
  const SmallScaleTerms* small_scale = nullptr;
};

// Free-space amplitudes alpha = G / (2 nu d).
double path_amplitude(double gain, double wavenumber, double distance);

// Reflected-path weights w(j, k) = gamma * h1(j, k) * h2(j, k), so that the
// effective channel is direct_k + sum_j w(j, k) exp(i phi(j, k)).
std::vector<cd> cascade_weights(const RisGeometry& geom, const LinkGeometry& link,
                                const OfdmGrid& grid, const SmallScaleTerms* small_scale = nullptr);

// Tx-side and UE-side per-element link coefficients h1(j, k), h2(j, k).
std::vector<cd> incoming_coefficients(const RisGeometry& geom, const LinkGeometry& link,
                                      const OfdmGrid& grid, double los_scale,
                                      const std::vector<cd>* chi);
std::vector<cd> outgoing_coefficients(const RisGeometry& geom, const LinkGeometry& link,
                                      const OfdmGrid& grid, double los_scale,
                                      const std::vector<cd>* chi);

// Direct Tx-UE term per sub-carrier; all zeros unless opts.include_direct.
std::vector<cd> direct_term(const LinkGeometry& link, const OfdmGrid& grid,
                            const ChannelOptions& opts);

// phases: N x n_s matrix, element-major.
std::vector<cd> effective_channel(const RisGeometry& geom, const LinkGeometry& link,
                                  const OfdmGrid& grid, const std::vector<double>& phases,
                                  const ChannelOptions& opts = {});

// nu_k (d_d - d1 - d2) folded into [0, 2*pi).
std::vector<double> tx_common_phase_alignment(const LinkGeometry& link, const OfdmGrid& grid);

// Per-element phases that bring every reflected term in phase with the
// reflected common phase at every sub-carrier.
std::vector<double> aligned_phases(const RisGeometry& geom, const LinkGeometry& link,
                                   const OfdmGrid& grid);

}  // namespace risofdm
