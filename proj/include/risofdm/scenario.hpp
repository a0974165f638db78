#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risofdm/codebook.hpp"
#include "risofdm/fading.hpp"
#include "risofdm/geometry.hpp"
#include "risofdm/miso.hpp"
#include "risofdm/ofdm.hpp"

namespace risofdm {

// Parse failure carrying the 1-based position of the offending token.
class ScenarioError : public ValidationError {
 public:
  ScenarioError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class SweepVariable { kTheta2, kBits, kElements, kSubcarriers, kTheta1 };
const char* to_string(SweepVariable v);

struct CoverageRow {
  std::size_t levels = 8;  // 2^b
  double r_th = 1.0;
};

// Everything a run needs. Angles in the file are given in degrees; the
// accessors below convert to the library's SI/radian conventions.
struct Scenario {
  // [geometry]
  Vec3 tx{0.0, 0.0, 3.0};
  Vec3 ris{100.0, 0.0, 3.0};
  double ue_radius = 15.0;
  double ue_theta2p_deg = 90.0;
  std::optional<double> theta1_deg;  // re-places the Tx at the same distance
  double theta1p_deg = 90.0;
  bool direct_link = false;

  // [ofdm]
  double f0 = 2.5e9;
  double delta_f = 200e3;
  std::size_t n_s = 256;
  double power_dbm = 1.0;
  double noise_dbm_per_hz = -174.0;
  bool equal_power = false;

  // [ris]
  std::size_t n_y = 200;
  std::size_t n_z = 1;
  double zeta = 0.5;
  double gamma = 0.85;
  int bits = 4;
  double epsilon = 1e-6;
  double delta_theta_deg = 1.0;
  double fit_m_max = 0.0;
  double fit_i0_max = 10.0;

  // [antennas]
  double tx_theta_bw_deg = 30.0;
  double tx_phi_bw_deg = 45.0;
  double ue_theta_bw_deg = 45.0;
  double ue_phi_bw_deg = 90.0;
  std::string gain_model = "beamwidth";  // or "unity"

  // [sweep]
  SweepVariable variable = SweepVariable::kTheta2;
  double start = 90.0;
  double stop = 270.0;
  double step = 1.0;
  std::vector<double> values;
  double theta2_step_deg = 1.0;
  std::vector<CoverageRow> coverage_rows{{2, 0.4}, {4, 0.8}, {8, 1.0}, {16, 1.2}};
  std::vector<double> theta1_values_deg{0.0, 30.0, 45.0, 60.0, 180.0};
  std::size_t theta1_levels = 16;
  double theta1_r_th = 1.2;
  std::vector<std::size_t> ns_values{128, 256, 512};
  std::size_t ns_levels = 16;

  // [fading]
  bool fading_enabled = false;
  double kappa = 200.0;
  double sigma2 = 1.0;
  std::uint64_t seed = 1;
  std::size_t draws = 100;
  bool rewaterfill = true;

  // [miso]
  std::size_t q_x = 8;
  std::size_t q_z = 1;
  double delta_t_lambda = 7.5;
  std::vector<std::size_t> ue_counts{3, 6};
  std::vector<std::size_t> miso_n_y{25, 50, 100, 150, 200, 250};
  std::string miso_scheme = "both";
  double miso_power_dbm = 10.0;
  int miso_bits = 4;
  double miso_kappa = 20.0;
  std::size_t miso_draws = 20;
  std::size_t miso_n_s = 256;

  void validate() const;

  OfdmGrid grid() const;
  RisGeometry ris_geometry() const;
  AntennaGains gains() const;
  double lambda0() const;
  Vec3 tx_position() const;
  double theta1() const;
  double theta1p() const;
  LinkGeometry link(double theta2) const;
  DesignOptions design_options() const;
  FadingConfig fading() const;
  TxArray tx_array() const;
  std::vector<double> theta2_grid() const;
};

Scenario parse_scenario(std::istream& is);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

// Writes every key with its current value; parse_scenario reads it back.
void write_scenario(std::ostream& os, const Scenario& sc);

}  // namespace risofdm
