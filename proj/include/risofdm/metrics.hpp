#pragma once

#include <vector>

namespace risofdm {

struct SweepResult {
  std::vector<double> theta2;
  std::vector<double> rate_arctan;
  std::vector<double> rate_const;
  std::vector<double> rate_ideal;

  void validate() const;
};

enum class Profile { kArctan, kConstant, kIdeal };

// Percentage of sweep points with rate >= r_th.
double coverage_percentage(const std::vector<double>& rates, double r_th);
double coverage_percentage(const SweepResult& sweep, Profile which, double r_th);

struct WinStats {
  double win_percent = 0.0;       // points with R_a > R_c
  double max_gain_percent = 0.0;  // max (R_a - R_c) / R_c over points with R_c > 0
};

WinStats win_fraction_and_max_gain(const std::vector<double>& rate_arctan,
                                   const std::vector<double>& rate_const);
WinStats win_fraction_and_max_gain(const SweepResult& sweep);

double mean(const std::vector<double>& v);

}  // namespace risofdm
