#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "risofdm/geometry.hpp"
#include "risofdm/ofdm.hpp"
#include "risofdm/phase_profile.hpp"

namespace risofdm {

// Linear profile that co-phases element j with the reflected common phase at
// every sub-carrier: phi(f) = -a (f - f0) + b0 equals nu(f) * (dy + dz) up to
// a multiple of 2*pi, i.e. a = -2*pi*(dy + dz)/c and b0 = 2*pi*f0*(dy + dz)/c.
std::vector<LinearProfile> optimal_linear(const RisGeometry& geom, const LinkGeometry& link,
                                          double f0);
std::vector<LinearProfile> optimal_linear(const RisGeometry& geom, double theta1, double theta1p,
                                          double theta2, double theta2p, double f0);

struct PairSet {
  std::vector<double> a;
  std::vector<double> b0;
  double theta1 = 0.0;
  double theta1p = 0.0;
  double delta_theta = 0.0;

  std::size_t size() const { return a.size(); }
};

// UE direction grid theta2 in [pi/2, 3pi/2], theta2p in [0, pi].
struct DirectionGrid {
  std::vector<double> theta2;
  std::vector<double> theta2p;
};
DirectionGrid direction_grid(double delta_theta);

PairSet build_pair_set(const RisGeometry& geom, double theta1, double theta1p,
                       double delta_theta, double f0);

// Appends the optimal slopes for every element and grid direction.
void append_optimal_slopes(const RisGeometry& geom, double theta1, double theta1p,
                           const DirectionGrid& directions, std::vector<double>& out);

// Number of slopes and of intercepts per slope for a b-bit cell. For even b
// both are 2^(b/2); for odd b the slope set gets the extra bit.
std::size_t slope_count(int bits);
std::size_t intercept_count(int bits);

// Splits the sorted samples into `count` index ranges of (almost) equal size
// and returns each range's mean, ascending. The input is reordered.
std::vector<double> quantile_means(std::vector<double>& samples, std::size_t count);
std::vector<double> select_slope_set(std::vector<double> samples, int bits);

// Per-slope intercept grids. Slope index 0 (the first, "odd" slope) gets
// {pi, pi - 2pi/c, ...}; the next one the same grid shifted down by pi/c.
std::vector<std::vector<double>> select_intercept_sets(int bits);

struct FitOptions {
  double m_max = 0.0;   // 0 selects 50 * 2 pi / bandwidth
  double i0_max = 10.0;
  std::size_t m_points_per_sign = 32;
  std::size_t i0_points = 129;
  std::size_t seeds = 6;
  bool refine = true;
};

struct FitResult {
  PhaseProfile profile;
  double mse = 0.0;
};

// Least-squares fit of an arctan profile to per-sub-carrier target phases,
// using circular differences.
FitResult fit_arctan_samples(const std::vector<double>& target, const OfdmGrid& grid,
                             const FitOptions& opts = {});
FitResult fit_arctan(const LinearProfile& linear, const OfdmGrid& grid,
                     const FitOptions& opts = {});
double profile_mse(const PhaseProfile& p, const std::vector<double>& target, const OfdmGrid& grid);

struct CodebookEntry {
  std::size_t slope_index = 0;
  std::size_t intercept_index = 0;
  LinearProfile linear;
  PhaseProfile profile;
  double fit_mse = 0.0;
};

// 2^b realizable cell states. State s = slope_index * intercept_count + intercept_index.
struct ProfileCodebook {
  int bits = 0;
  double f0 = 0.0;
  std::vector<double> slopes_a;
  std::vector<std::vector<double>> intercepts_b;
  std::vector<CodebookEntry> entries;

  std::size_t size() const { return entries.size(); }
  // Phase of state s at frequency f.
  double phase(std::size_t s, double f) const { return phase_at(entries[s].profile, f, f0); }
};

struct DesignOptions {
  double delta_theta = kDefaultDeltaTheta;
  FitOptions fit;
  static constexpr double kDefaultDeltaTheta = 3.14159265358979323846 / 180.0;
};

// Assembles a codebook from a slope set (fits every slope/intercept pair).
ProfileCodebook codebook_from_slopes(const std::vector<double>& slopes, int bits,
                                     const OfdmGrid& grid, const FitOptions& fit);

ProfileCodebook design_codebook(const RisGeometry& geom, double theta1, double theta1p,
                                const OfdmGrid& grid, int bits, const DesignOptions& opts = {});

void write_codebook(std::ostream& os, const ProfileCodebook& cb);
ProfileCodebook read_codebook(std::istream& is);
void save_codebook(const std::string& path, const ProfileCodebook& cb);
ProfileCodebook load_codebook(const std::string& path);

}  // namespace risofdm
