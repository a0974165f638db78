#include "risofdm/water_filling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "risofdm/units.hpp"

namespace risofdm {

namespace {

void check_inputs(const std::vector<double>& gains, double noise, double budget) {
  if (!(budget > 0.0)) throw ValidationError("water_filling: budget must be positive");
  if (!(noise > 0.0)) throw ValidationError("water_filling: noise must be positive");
  for (double g : gains) {
    if (!(g >= 0.0)) throw ValidationError("water_filling: gains must be non-negative");
  }
}

WaterFilling equal_split(std::size_t n, double budget) {
  WaterFilling out;
  out.power.assign(n, n == 0 ? 0.0 : budget / static_cast<double>(n));
  out.all_gains_zero = true;
  return out;
}

}  // namespace

WaterFilling water_filling_bisection(const std::vector<double>& gains, double noise,
                                     double budget, double tol) {
  check_inputs(gains, noise, budget);
  const std::size_t n = gains.size();
  std::vector<double> inv(n, INFINITY);
  double lo = INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    if (gains[k] > 0.0) inv[k] = noise / gains[k];
    lo = std::min(lo, inv[k]);
  }
  if (!std::isfinite(lo)) return equal_split(n, budget);
  double hi = lo + budget;
  auto used = [&](double mu) {
    double s = 0.0;
    for (double v : inv) s += std::max(0.0, mu - v);
    return s;
  };
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (used(mid) > budget ? hi : lo) = mid;
  }
  WaterFilling out;
  out.water_level = 0.5 * (lo + hi);
  out.power.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.power[k] = std::max(0.0, out.water_level - inv[k]);
  return out;
}

WaterFilling water_filling(const std::vector<double>& gains, double noise, double budget) {
  check_inputs(gains, noise, budget);
  const std::size_t n = gains.size();
  std::vector<double> inv;
  std::vector<std::size_t> idx;
  inv.reserve(n);
  idx.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (gains[k] > 0.0) {
      const double v = noise / gains[k];
      if (std::isfinite(v)) {
        idx.push_back(k);
        inv.push_back(v);
      }
    }
  }
  if (idx.empty()) {
    bool any_positive = std::any_of(gains.begin(), gains.end(), [](double g) { return g > 0.0; });
    if (any_positive) return water_filling_bisection(gains, noise, budget);
    return equal_split(n, budget);
  }
  std::vector<std::size_t> order(idx.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inv[a] < inv[b] || (inv[a] == inv[b] && a < b);
  });

  // Largest active set whose water level stays above its weakest member.
  double prefix = 0.0;
  double mu = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = inv[order[i]];
    const double cand = (budget + prefix + v) / static_cast<double>(i + 1);
    if (i > 0 && cand <= v) break;
    prefix += v;
    mu = cand;
    active = i + 1;
  }
  if (!std::isfinite(mu)) return water_filling_bisection(gains, noise, budget);

  WaterFilling out;
  out.water_level = mu;
  out.power.assign(n, 0.0);
  for (std::size_t i = 0; i < active; ++i) {
    const std::size_t t = order[i];
    out.power[idx[t]] = std::max(0.0, mu - inv[t]);
  }
  return out;
}

}  // namespace risofdm
