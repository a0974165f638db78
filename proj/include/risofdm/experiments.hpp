#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "risofdm/codebook.hpp"
#include "risofdm/metrics.hpp"
#include "risofdm/miso.hpp"
#include "risofdm/scenario.hpp"

namespace risofdm {

// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency) and
// returns the results in index order. The first exception thrown by any task
// is rethrown after all workers have stopped.
template <typename T>
std::vector<T> parallel_map(std::size_t n, std::size_t threads,
                            const std::function<T(std::size_t)>& fn);

std::size_t resolve_threads(std::size_t requested);

struct ProfileMask {
  bool arctan = true;
  bool constant = true;
  bool ideal = true;

  static ProfileMask parse(const std::string& name);  // arctan|const|ideal|all
};

const char* to_string(Profile p);

// One (sweep value, theta2, profile) record.
struct SweepRow {
  double value = 0.0;
  double theta2 = 0.0;  // rad
  Profile profile = Profile::kArctan;
  double rate = 0.0;
  double initial_rate = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  double seconds = 0.0;
  // Rician statistics of the LoS design; NaN when fading is off.
  double fading_mean = 0.0;
  double fading_stddev = 0.0;
};

// Profile codebook for the scenario's current settings. When `given` is set and
// was built for the same bits it is reused.
ProfileCodebook scenario_codebook(const Scenario& sc, const ProfileCodebook* given = nullptr);

// Scenario copy with the swept variable set to `value` (degrees for angles).
Scenario apply_sweep_value(const Scenario& sc, SweepVariable variable, double value);

// Values of the configured sweep: the explicit list, or start:step:stop.
std::vector<double> sweep_values(const Scenario& sc);

// Every profile in `mask` at every theta2 of `theta2_grid`.
std::vector<SweepRow> run_theta2_points(const Scenario& sc, const ProfileCodebook& cb,
                                        const std::vector<double>& theta2_grid, ProfileMask mask,
                                        double value, std::size_t threads);

// The full sweep: for theta2 one point per value; for the other variables the
// scenario's theta2 grid at every value (with a codebook designed per value).
std::vector<SweepRow> run_sweep(const Scenario& sc, const ProfileCodebook* given, ProfileMask mask,
                                std::size_t threads);

SweepResult to_sweep_result(const std::vector<SweepRow>& rows);

struct CoverageCell {
  std::size_t levels = 0;
  double r_th = 0.0;
  double key = 0.0;  // theta1 in degrees or n_s, depending on the table
  double arctan_percent = 0.0;
  double const_percent = 0.0;
};

struct GainCell {
  std::size_t n_s = 0;
  std::size_t levels = 0;
  WinStats stats;
};

struct Tables {
  std::vector<CoverageCell> bits_table;    // one row per configured (2^b, R_th)
  std::vector<CoverageCell> theta1_table;  // one row per theta1
  std::vector<GainCell> ns_table;          // one row per n_s
};

// Arctan and constant sweeps over the theta2 grid at 2^b = levels.
SweepResult coverage_sweep(const Scenario& sc, std::size_t levels, const ProfileCodebook* given,
                           std::size_t threads);
Tables run_tables(const Scenario& sc, const ProfileCodebook* given, std::size_t threads);

struct MisoCell {
  std::size_t n_ue = 0;
  std::size_t n_y = 0;
  Precoder scheme = Precoder::kMRT;
  Profile profile = Profile::kArctan;
  double mean_sum_rate = 0.0;
  double stddev = 0.0;
  std::size_t draws = 0;
};

// Mean sum rate over the fading draws, each optimized with its own channel.
MisoCell miso_cell(const Scenario& sc, const ProfileCodebook& cb, std::size_t n_ue,
                   Precoder scheme, Profile profile, std::size_t threads);
// Multi-user codebook for the scenario's Tx array and current n_y.
ProfileCodebook miso_codebook(const Scenario& sc);
std::vector<MisoCell> run_miso(const Scenario& sc, const ProfileCodebook* given,
                               std::size_t threads);

}  // namespace risofdm

#include "risofdm/parallel_impl.hpp"
