#pragma once

#include <vector>

namespace risofdm {

struct WaterFilling {
  std::vector<double> power;
  double water_level = 0.0;
  // Set when no channel has positive gain; the budget is then split equally.
  bool all_gains_zero = false;
};

// Maximizes sum_k log(1 + g_k p_k / noise) subject to sum_k p_k = budget.
WaterFilling water_filling(const std::vector<double>& gains, double noise, double budget);

// Reference solver: bisection on the water level. Used by tests and as a
// fallback when the closed-form active-set pass is not finite.
WaterFilling water_filling_bisection(const std::vector<double>& gains, double noise,
                                     double budget, double tol = 1e-14);

}  // namespace risofdm
