#include "risofdm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "risofdm/units.hpp"

namespace risofdm {

void SweepResult::validate() const {
  const auto n = theta2.size();
  if (rate_arctan.size() != n || rate_const.size() != n || rate_ideal.size() != n) {
    throw ValidationError("SweepResult: rate lists must match the grid length");
  }
}

double coverage_percentage(const std::vector<double>& rates, double r_th) {
  if (rates.empty()) throw ValidationError("coverage_percentage: empty sweep");
  const auto hits = std::count_if(rates.begin(), rates.end(), [&](double r) { return r >= r_th; });
  return 100.0 * static_cast<double>(hits) / static_cast<double>(rates.size());
}

double coverage_percentage(const SweepResult& sweep, Profile which, double r_th) {
  sweep.validate();
  switch (which) {
    case Profile::kArctan: return coverage_percentage(sweep.rate_arctan, r_th);
    case Profile::kConstant: return coverage_percentage(sweep.rate_const, r_th);
    case Profile::kIdeal: return coverage_percentage(sweep.rate_ideal, r_th);
  }
  throw ValidationError("coverage_percentage: unknown profile");
}

WinStats win_fraction_and_max_gain(const std::vector<double>& ra, const std::vector<double>& rc) {
  if (ra.size() != rc.size() || ra.empty()) {
    throw ValidationError("win_fraction_and_max_gain: curves must be non-empty and aligned");
  }
  WinStats s;
  std::size_t wins = 0;
  bool any_gain = false;
  double best = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i] > rc[i]) ++wins;
    if (rc[i] > 0.0) {
      const double g = (ra[i] - rc[i]) / rc[i];
      if (!any_gain || g > best) best = g;
      any_gain = true;
    }
  }
  s.win_percent = 100.0 * static_cast<double>(wins) / static_cast<double>(ra.size());
  s.max_gain_percent = any_gain ? 100.0 * best : 0.0;
  return s;
}

WinStats win_fraction_and_max_gain(const SweepResult& sweep) {
  sweep.validate();
  return win_fraction_and_max_gain(sweep.rate_arctan, sweep.rate_const);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw ValidationError("mean: empty input");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace risofdm
