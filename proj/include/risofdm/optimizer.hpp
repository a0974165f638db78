#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "risofdm/channel.hpp"
#include "risofdm/codebook.hpp"
#include "risofdm/geometry.hpp"
#include "risofdm/ofdm.hpp"

namespace risofdm {

// Normalized achievable rate (1/n_s) sum_k log2(1 + |r_k|^2 p_k / (sigma^2 delta_f)).
double achievable_rate(const std::vector<cd>& channel, const std::vector<double>& power,
                       const OfdmGrid& grid);

struct Assignment {
  std::vector<std::size_t> state_index;  // empty for the per-frequency ideal bound
  std::vector<double> power;
  double rate = 0.0;
  double initial_rate = 0.0;
  std::vector<double> accepted_rates;  // objective after every accepted update
  std::size_t passes = 0;
  std::size_t evaluations = 0;
};

// Discrete per-element state selection where every element draws from the same
// table of per-sub-carrier phasors:
//   r_k = base_k + sum_j weight(j, k) * phasor(state_j, k).
struct SelectionProblem {
  std::size_t n_elements = 0;
  std::size_t n_states = 0;
  std::size_t n_s = 0;
  std::vector<cd> base;           // n_s
  std::vector<cd> weights;        // n_elements x n_s
  std::vector<cd> state_phasors;  // n_states x n_s
  double noise = 0.0;             // per sub-carrier, W
  double budget = 0.0;            // W
  bool equal_power = false;

  void validate() const;
};

std::vector<cd> channel_for(const SelectionProblem& p, const std::vector<std::size_t>& states);
// Power allocation and rate for a realized channel.
std::vector<double> allocate_power(const std::vector<cd>& channel, double noise, double budget,
                                   bool equal_power);
double rate_for(const std::vector<cd>& channel, const std::vector<double>& power, double noise);

struct DescentOptions {
  double epsilon = 1e-6;
  // Element visiting order; empty means ascending j.
  std::vector<std::size_t> order;
  std::size_t max_passes = 1000;
};

// Coordinate descent: per element try every state, accept strict improvements.
Assignment coordinate_descent(const SelectionProblem& p, std::vector<std::size_t> initial,
                              const DescentOptions& opts = {});

// Exhaustive search over all state combinations (refuses above 1e7).
Assignment exhaustive_search(const SelectionProblem& p);

struct OptimizeOptions {
  double epsilon = 1e-6;
  bool equal_power = false;
  bool include_direct = false;
  bool align_direct = true;
  const SmallScaleTerms* small_scale = nullptr;
  std::vector<std::size_t> order;

  ChannelOptions channel_options() const {
    return ChannelOptions{include_direct, include_direct && align_direct, small_scale};
  }
};

SelectionProblem arctan_problem(const ProfileCodebook& cb, const RisGeometry& geom,
                                const LinkGeometry& link, const OfdmGrid& grid,
                                const OptimizeOptions& opts = {});
SelectionProblem constant_problem(int bits, const RisGeometry& geom, const LinkGeometry& link,
                                  const OfdmGrid& grid, const OptimizeOptions& opts = {});

// Frequency-flat phases {-pi, -pi + 2pi/2^b, ...}.
std::vector<double> constant_phase_states(int bits);

// Nearest (a, b0) codebook pair to each element's optimal linear profile.
// Distances are taken in radians: the slope difference is multiplied by
// slope_scale (half the occupied bandwidth, the largest |f - f0| in the band)
// and the intercept difference is circular.
std::vector<std::size_t> initial_assignment(const ProfileCodebook& cb, const RisGeometry& geom,
                                            const LinkGeometry& link, const OfdmGrid& grid);
std::vector<std::size_t> nearest_states(const std::vector<LinearProfile>& optimal,
                                        const std::vector<LinearProfile>& states,
                                        double slope_scale);

Assignment evaluate_states(const SelectionProblem& p, const std::vector<std::size_t>& states);

Assignment optimize_profiles(const ProfileCodebook& cb, const RisGeometry& geom,
                             const LinkGeometry& link, const OfdmGrid& grid,
                             const OptimizeOptions& opts = {});
Assignment exhaustive_oracle(const ProfileCodebook& cb, const RisGeometry& geom,
                             const LinkGeometry& link, const OfdmGrid& grid,
                             const OptimizeOptions& opts = {});
// Coordinate descent over frequency-flat states with the given amplitude
// (unity by default).
Assignment constant_profile_baseline(int bits, const RisGeometry& geom, const LinkGeometry& link,
                                     const OfdmGrid& grid, const OptimizeOptions& opts = {},
                                     double amplitude = 1.0);
// Per-sub-carrier co-phasing of every element with the geometry's amplitude.
Assignment ideal_upper_bound(const RisGeometry& geom, const LinkGeometry& link,
                             const OfdmGrid& grid, const OptimizeOptions& opts = {});

// Per-element per-sub-carrier phases realized by an assignment.
std::vector<double> codebook_phases(const ProfileCodebook& cb,
                                    const std::vector<std::size_t>& states, const OfdmGrid& grid);
std::vector<double> constant_phases(int bits, const std::vector<std::size_t>& states,
                                    std::size_t n_s);

}  // namespace risofdm
