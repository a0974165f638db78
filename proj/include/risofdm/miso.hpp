#pragma once

#include <cstddef>
#include <vector>

#include "risofdm/codebook.hpp"
#include "risofdm/fading.hpp"
#include "risofdm/geometry.hpp"
#include "risofdm/ofdm.hpp"
#include "risofdm/optimizer.hpp"

namespace risofdm {

// Rectangular Tx array in the x-z plane. Antenna j (0-based) sits at
// base + [spacing * q_x(j), 0, spacing * q_z(j)].
struct TxArray {
  std::size_t q_x = 8;
  std::size_t q_z = 1;
  double spacing = 0.8993773748;  // 7.5 wavelengths at 2.5 GHz
  Vec3 base{0.0, 0.0, 3.0};

  std::size_t size() const { return q_x * q_z; }
  void validate() const;
  double index_x(std::size_t j) const;
  double index_z(std::size_t j) const;
  Vec3 position(std::size_t j) const;
};

// L UEs equally spaced on the half circle theta2 in (pi/2, 3pi/2) at the RIS height.
std::vector<Vec3> ues_on_half_circle(const Vec3& ris_center, double radius, std::size_t count);

// Per-(sub-carrier, UE, antenna) coefficients in the convention
// y_l = sum_q (direct + cascaded)(k, l, q) x_q, i.e. the conjugate of the
// column channel vector. Entry (k, l, q) lives at (k * L + l) * Q + q.
struct MisoChannelSet {
  std::size_t n_s = 0;
  std::size_t n_ue = 0;
  std::size_t n_tx = 0;
  std::vector<cd> direct;
  std::vector<cd> cascaded;

  std::size_t at(std::size_t k, std::size_t l, std::size_t q) const {
    return (k * n_ue + l) * n_tx + q;
  }
  cd total(std::size_t k, std::size_t l, std::size_t q) const {
    return direct[at(k, l, q)] + cascaded[at(k, l, q)];
  }
};

enum class Precoder { kZF, kMRT };
const char* to_string(Precoder p);

// u(k, q, l) at (k * Q + q) * L + l; power(k, l) at k * L + l.
struct PrecodingPlan {
  Precoder scheme = Precoder::kMRT;
  std::size_t n_s = 0;
  std::size_t n_ue = 0;
  std::size_t n_tx = 0;
  std::vector<cd> u;
  std::vector<double> power;
  bool zero_channel = false;  // some MRT direction was undefined

  cd& col(std::size_t k, std::size_t q, std::size_t l) { return u[(k * n_tx + q) * n_ue + l]; }
  const cd& col(std::size_t k, std::size_t q, std::size_t l) const {
    return u[(k * n_tx + q) * n_ue + l];
  }
};

struct MisoLinkOptions {
  bool include_direct = false;
  const FadingConfig* fading = nullptr;
  std::size_t draw = 0;
};

// Precomputed per-hop coefficients of one channel realization.
struct MisoModel {
  std::size_t n_elements = 0;
  std::size_t n_s = 0;
  std::size_t n_ue = 0;
  std::size_t n_tx = 0;
  double amplitude = 1.0;
  std::vector<cd> h1;      // (q, j, k) at (q * N + j) * n_s + k
  std::vector<cd> h2;      // (l, j, k) at (l * N + j) * n_s + k
  std::vector<cd> direct;  // (k, l, q)
};

MisoModel build_miso_model(const TxArray& tx, const RisGeometry& geom,
                           const std::vector<Vec3>& ues, const OfdmGrid& grid,
                           const AntennaGains& gains, const MisoLinkOptions& opts = {});

MisoChannelSet miso_channels(const MisoModel& model, const std::vector<double>& phases);
MisoChannelSet miso_channels(const TxArray& tx, const RisGeometry& geom,
                             const std::vector<Vec3>& ues, const OfdmGrid& grid,
                             const AntennaGains& gains, const std::vector<double>& phases,
                             const MisoLinkOptions& opts = {});

// Unit-norm precoders for sub-carrier k written into plan.u.
void zf_precoder(const MisoChannelSet& ch, std::size_t k, PrecodingPlan& plan);
void mrt_precoder(const MisoChannelSet& ch, std::size_t k, PrecodingPlan& plan);

// Precoders for every sub-carrier plus the power allocation:
// ZF water-fills budget/L over each UE's sub-carriers, MRT (or equal_power)
// splits budget equally over all (k, l).
PrecodingPlan make_plan(const MisoChannelSet& ch, Precoder scheme, double noise, double budget,
                        bool equal_power = false);

double sinr(const MisoChannelSet& ch, const PrecodingPlan& plan, std::size_t k, std::size_t l,
            double noise);
double sum_rate(const MisoChannelSet& ch, const PrecodingPlan& plan, double noise);

ProfileCodebook design_codebook_miso(const TxArray& tx, const RisGeometry& geom,
                                     const OfdmGrid& grid, int bits,
                                     const DesignOptions& opts = {});

struct MisoSelection {
  std::size_t n_elements = 0;
  std::size_t n_states = 0;
  std::size_t n_s = 0;
  std::size_t n_ue = 0;
  std::size_t n_tx = 0;
  std::vector<cd> base;           // (k, l, q)
  std::vector<cd> weights;        // (j, k, l, q): gamma * h1 * h2
  std::vector<cd> state_phasors;  // (s, k)
  double noise = 0.0;
  double budget = 0.0;
  Precoder scheme = Precoder::kMRT;
  bool equal_power = false;
};

MisoSelection miso_selection(const MisoModel& model, const std::vector<cd>& state_phasors,
                             std::size_t n_states, const OfdmGrid& grid, Precoder scheme,
                             bool equal_power = false);
MisoSelection miso_arctan_selection(const MisoModel& model, const ProfileCodebook& cb,
                                    const OfdmGrid& grid, Precoder scheme,
                                    bool equal_power = false);
MisoSelection miso_constant_selection(const MisoModel& model, int bits, const OfdmGrid& grid,
                                      Precoder scheme, bool equal_power = false);

MisoChannelSet selection_channels(const MisoSelection& p, const std::vector<std::size_t>& states);

struct MisoResult {
  Assignment assignment;  // rate = sum rate
  PrecodingPlan plan;
};

MisoResult evaluate_miso(const MisoSelection& p, const std::vector<std::size_t>& states);
MisoResult optimize_profiles_miso(const MisoSelection& p, std::vector<std::size_t> initial,
                                  const DescentOptions& opts = {});
MisoResult exhaustive_oracle_miso(const MisoSelection& p);

// Start candidates: the nearest-pair SISO initialization for every UE (with
// Tx antenna 0); the one with the highest sum rate is returned.
std::vector<std::size_t> initial_assignment_miso(const MisoSelection& p,
                                                 const std::vector<LinearProfile>& state_pairs,
                                                 const TxArray& tx, const RisGeometry& geom,
                                                 const std::vector<Vec3>& ues,
                                                 const AntennaGains& gains, const OfdmGrid& grid);
std::vector<LinearProfile> codebook_state_pairs(const ProfileCodebook& cb);
std::vector<LinearProfile> constant_state_pairs(int bits);

}  // namespace risofdm
