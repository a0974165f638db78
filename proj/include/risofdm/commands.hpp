#pragma once

#include <iosfwd>
#include <string>

#include "risofdm/experiments.hpp"

namespace risofdm {

// First two lines of every CSV the commands emit: a version tag and the column names.
inline constexpr const char* kSweepCsvHeader =
    "# risofdm sweep v1\n"
    "variable,value,theta2_deg,profile,rate_bps_hz,initial_rate_bps_hz,iterations,evaluations,"
    "wall_time_s,fading_mean_bps_hz,fading_std_bps_hz\n";
inline constexpr const char* kBitsTableHeader =
    "# risofdm coverage-by-levels v1\n"
    "levels,r_th_bps_hz,arctan_percent,const_percent\n";
inline constexpr const char* kTheta1TableHeader =
    "# risofdm coverage-by-theta1 v1\n"
    "theta1_deg,levels,r_th_bps_hz,arctan_percent,const_percent\n";
inline constexpr const char* kNsTableHeader =
    "# risofdm gain-by-subcarriers v1\n"
    "n_s,levels,win_percent,max_gain_percent\n";
inline constexpr const char* kMisoCsvHeader =
    "# risofdm miso v1\n"
    "n_ue,n_y,scheme,profile,mean_sum_rate_bps_hz,std_sum_rate_bps_hz,draws\n";
inline constexpr const char* kFitCsvHeader =
    "# risofdm fit v1\n"
    "a_rad_per_hz,b0_rad,m,i0,mse_rad2,max_abs_error_rad\n";

struct CommandOptions {
  std::size_t threads = 0;
  ProfileMask profiles{};
  bool miso = false;  // design-sets: multi-user codebook
};

void cmd_design_sets(const Scenario& sc, std::ostream& out, const CommandOptions& opts = {});
void cmd_sweep(const Scenario& sc, const ProfileCodebook* cb, std::ostream& out,
               const CommandOptions& opts = {});
// Writes the three tables, each with its own header.
void cmd_tables(const Scenario& sc, const ProfileCodebook* cb, std::ostream& by_levels,
                std::ostream& by_theta1, std::ostream& by_ns, const CommandOptions& opts = {});
void cmd_miso(const Scenario& sc, const ProfileCodebook* cb, std::ostream& out,
              const CommandOptions& opts = {});
void cmd_fit(const Scenario& sc, const LinearProfile& linear, std::ostream& out);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace risofdm
