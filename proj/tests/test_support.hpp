// Random instance generators shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "risofdm/codebook.hpp"
#include "risofdm/geometry.hpp"
#include "risofdm/ofdm.hpp"
#include "risofdm/optimizer.hpp"
#include "risofdm/units.hpp"

namespace risofdm::testing {

struct SisoInstance {
  RisGeometry geom;
  LinkGeometry link;
  OfdmGrid grid;
  ProfileCodebook cb;
  int bits = 2;
};

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random RIS link with a compact codebook designed for it. n elements form a
// single row; the power is drawn so that per-carrier SNRs span 0-30 dB.
inline SisoInstance random_siso(std::mt19937_64& rng, std::size_t n, int bits, std::size_t ns) {
  SisoInstance in;
  in.bits = bits;
  in.geom.n_y = n;
  in.geom.n_z = 1;
  in.grid.n_s = ns;
  const double theta1 = uniform(rng, -0.6, 0.6);
  const double theta1p = uniform(rng, 1.2, 1.9);
  const Vec3 tx = tx_for_arrival(in.geom.center, uniform(rng, 20.0, 150.0), theta1, theta1p);
  const Vec3 ue = ue_on_circle(in.geom.center, uniform(rng, 5.0, 30.0),
                               uniform(rng, kPi / 2 + 0.05, 3 * kPi / 2 - 0.05),
                               uniform(rng, 1.1, 2.0));
  in.link = make_link(tx, in.geom.center, ue, AntennaGains{4.0, 2.0});
  DesignOptions opts;
  opts.delta_theta = kPi / 36;
  opts.fit.m_points_per_sign = 12;
  opts.fit.i0_points = 41;
  in.cb = design_codebook(in.geom, in.link.theta1, in.link.theta1p, in.grid, bits, opts);
  // Scale the budget so that the strongest coherent SNR lands near 10^(x/10).
  const double nu = in.grid.wavenumber(0);
  const double tau = path_amplitude(in.link.g_t, nu, in.link.d1) *
                     path_amplitude(in.link.g_r, nu, in.link.d2) * in.geom.amplitude *
                     static_cast<double>(n);
  const double snr_db = uniform(rng, 0.0, 30.0);
  in.grid.total_power = std::pow(10.0, snr_db / 10.0) * in.grid.noise_per_subcarrier() *
                        static_cast<double>(ns) / (tau * tau);
  return in;
}

// Unstructured selection problem with random weights and phasors.
inline SelectionProblem random_selection(std::mt19937_64& rng, std::size_t n,
                                         std::size_t states, std::size_t ns) {
  SelectionProblem p;
  p.n_elements = n;
  p.n_states = states;
  p.n_s = ns;
  std::normal_distribution<double> g;
  p.base.assign(ns, cd{0.0, 0.0});
  for (auto& b : p.base) b = 0.3 * cd{g(rng), g(rng)};
  p.weights.resize(n * ns);
  for (auto& w : p.weights) w = cd{g(rng), g(rng)};
  p.state_phasors.resize(states * ns);
  for (auto& s : p.state_phasors) s = std::polar(1.0, uniform(rng, -kPi, kPi));
  p.noise = uniform(rng, 0.1, 10.0);
  p.budget = uniform(rng, 1.0, 100.0);
  return p;
}

inline std::vector<double> random_gains(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> g(n);
  std::lognormal_distribution<double> ln(0.0, 2.0);
  std::bernoulli_distribution zero(0.1);
  for (auto& v : g) v = zero(rng) ? 0.0 : ln(rng);
  return g;
}

}  // namespace risofdm::testing
