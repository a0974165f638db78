#include "risofdm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "risofdm/units.hpp"
#include "risofdm/water_filling.hpp"

namespace risofdm {

double achievable_rate(const std::vector<cd>& channel, const std::vector<double>& power,
                       const OfdmGrid& grid) {
  if (channel.size() != grid.n_s || power.size() != grid.n_s) {
    throw ValidationError("achievable_rate: channel and power must have n_s entries");
  }
  return rate_for(channel, power, grid.noise_per_subcarrier());
}

double rate_for(const std::vector<cd>& channel, const std::vector<double>& power, double noise) {
  double acc = 0.0;
  for (std::size_t k = 0; k < channel.size(); ++k) {
    acc += std::log1p(std::norm(channel[k]) * power[k] / noise);
  }
  return acc / (std::log(2.0) * static_cast<double>(channel.size()));
}

std::vector<double> allocate_power(const std::vector<cd>& channel, double noise, double budget,
                                   bool equal_power) {
  if (equal_power) {
    return std::vector<double>(channel.size(), budget / static_cast<double>(channel.size()));
  }
  std::vector<double> gains(channel.size());
  for (std::size_t k = 0; k < channel.size(); ++k) gains[k] = std::norm(channel[k]);
  return water_filling(gains, noise, budget).power;
}

void SelectionProblem::validate() const {
  if (n_elements == 0 || n_states == 0 || n_s == 0) {
    throw ValidationError("SelectionProblem: empty dimensions");
  }
  if (base.size() != n_s || weights.size() != n_elements * n_s ||
      state_phasors.size() != n_states * n_s) {
    throw ValidationError("SelectionProblem: inconsistent array shapes");
  }
  if (!(noise > 0.0) || !(budget > 0.0)) {
    throw ValidationError("SelectionProblem: noise and budget must be positive");
  }
}

std::vector<cd> channel_for(const SelectionProblem& p, const std::vector<std::size_t>& states) {
  if (states.size() != p.n_elements) {
    throw ValidationError("channel_for: expected one state per element");
  }
  std::vector<cd> r = p.base;
  for (std::size_t j = 0; j < p.n_elements; ++j) {
    if (states[j] >= p.n_states) throw ValidationError("channel_for: state index out of range");
    const cd* w = &p.weights[j * p.n_s];
    const cd* ph = &p.state_phasors[states[j] * p.n_s];
    for (std::size_t k = 0; k < p.n_s; ++k) r[k] += w[k] * ph[k];
  }
  return r;
}

Assignment evaluate_states(const SelectionProblem& p, const std::vector<std::size_t>& states) {
  Assignment a;
  a.state_index = states;
  const auto r = channel_for(p, states);
  a.power = allocate_power(r, p.noise, p.budget, p.equal_power);
  a.rate = rate_for(r, a.power, p.noise);
  a.initial_rate = a.rate;
  return a;
}

Assignment coordinate_descent(const SelectionProblem& p, std::vector<std::size_t> states,
                              const DescentOptions& opts) {
  p.validate();
  if (!(opts.epsilon > 0.0)) throw ValidationError("coordinate_descent: epsilon must be positive");
  std::vector<std::size_t> order = opts.order;
  if (order.empty()) {
    order.resize(p.n_elements);
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else if (order.size() != p.n_elements) {
    throw ValidationError("coordinate_descent: order must list every element once");
  }

  const std::size_t ns = p.n_s;
  std::vector<cd> r = channel_for(p, states);
  double rate = rate_for(r, allocate_power(r, p.noise, p.budget, p.equal_power), p.noise);

  Assignment out;
  out.initial_rate = rate;
  std::vector<cd> cand(ns);
  for (std::size_t pass = 0; pass < opts.max_passes; ++pass) {
    const double pass_start = rate;
    for (std::size_t j : order) {
      const cd* w = &p.weights[j * ns];
      for (std::size_t s = 0; s < p.n_states; ++s) {
        if (s == states[j]) continue;
        const cd* cur = &p.state_phasors[states[j] * ns];
        const cd* nxt = &p.state_phasors[s * ns];
        for (std::size_t k = 0; k < ns; ++k) cand[k] = r[k] + w[k] * (nxt[k] - cur[k]);
        const double v =
            rate_for(cand, allocate_power(cand, p.noise, p.budget, p.equal_power), p.noise);
        ++out.evaluations;
        if (!(v > rate)) continue;
        // Confirm on an exactly recomputed channel so that accepted values
        // never drift below the incumbent through rounding.
        const std::size_t previous = states[j];
        states[j] = s;
        std::vector<cd> exact = channel_for(p, states);
        const double ve =
            rate_for(exact, allocate_power(exact, p.noise, p.budget, p.equal_power), p.noise);
        if (ve > rate) {
          r = std::move(exact);
          rate = ve;
          out.accepted_rates.push_back(rate);
        } else {
          states[j] = previous;
        }
      }
    }
    ++out.passes;
    if (rate - pass_start <= opts.epsilon) break;
  }
  out.state_index = std::move(states);
  out.power = allocate_power(r, p.noise, p.budget, p.equal_power);
  out.rate = rate;
  return out;
}

Assignment exhaustive_search(const SelectionProblem& p) {
  p.validate();
  const double combos = std::pow(static_cast<double>(p.n_states), static_cast<double>(p.n_elements));
  if (combos > 1e7) {
    throw ValidationError("exhaustive search over " + std::to_string(p.n_states) + "^" +
                          std::to_string(p.n_elements) + " configurations exceeds the 1e7 bound");
  }
  const std::size_t ns = p.n_s;
  std::vector<std::size_t> states(p.n_elements, 0);
  std::vector<cd> r = channel_for(p, states);
  std::vector<std::size_t> best_states = states;
  double best = -1.0;
  std::size_t evaluations = 0;
  while (true) {
    const double v = rate_for(r, allocate_power(r, p.noise, p.budget, p.equal_power), p.noise);
    ++evaluations;
    if (v > best) {
      best = v;
      best_states = states;
    }
    // Odometer increment; the channel is updated for the lowest digit and
    // rebuilt exactly whenever a carry happens.
    std::size_t d = 0;
    while (d < p.n_elements && states[d] + 1 == p.n_states) {
      states[d] = 0;
      ++d;
    }
    if (d == p.n_elements) break;
    if (d == 0) {
      const cd* w = &p.weights[0];
      const cd* cur = &p.state_phasors[states[0] * ns];
      const cd* nxt = &p.state_phasors[(states[0] + 1) * ns];
      for (std::size_t k = 0; k < ns; ++k) r[k] += w[k] * (nxt[k] - cur[k]);
      ++states[0];
    } else {
      ++states[d];
      r = channel_for(p, states);
    }
  }
  Assignment out = evaluate_states(p, best_states);
  out.evaluations = evaluations;
  out.passes = 1;
  return out;
}

std::vector<double> constant_phase_states(int bits) {
  if (bits < 1 || bits > 20) throw ValidationError("bits must lie in [1, 20]");
  const std::size_t n = std::size_t{1} << bits;
  std::vector<double> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    out[s] = -kPi + kTwoPi * static_cast<double>(s) / static_cast<double>(n);
  }
  return out;
}

namespace {

SelectionProblem base_problem(const RisGeometry& geom, const LinkGeometry& link,
                              const OfdmGrid& grid, const OptimizeOptions& opts) {
  geom.validate();
  grid.validate();
  SelectionProblem p;
  p.n_elements = geom.size();
  p.n_s = grid.n_s;
  p.base = direct_term(link, grid, opts.channel_options());
  p.weights = cascade_weights(geom, link, grid, opts.small_scale);
  p.noise = grid.noise_per_subcarrier();
  p.budget = grid.total_power;
  p.equal_power = opts.equal_power;
  return p;
}

std::vector<LinearProfile> codebook_pairs(const ProfileCodebook& cb) {
  std::vector<LinearProfile> out;
  out.reserve(cb.size());
  for (const auto& e : cb.entries) out.push_back(e.linear);
  return out;
}

std::vector<LinearProfile> constant_pairs(int bits) {
  std::vector<LinearProfile> out;
  for (double ph : constant_phase_states(bits)) out.push_back(LinearProfile{0.0, ph});
  return out;
}

}  // namespace

SelectionProblem arctan_problem(const ProfileCodebook& cb, const RisGeometry& geom,
                                const LinkGeometry& link, const OfdmGrid& grid,
                                const OptimizeOptions& opts) {
  if (cb.size() == 0) throw ValidationError("arctan_problem: empty codebook");
  SelectionProblem p = base_problem(geom, link, grid, opts);
  p.n_states = cb.size();
  p.state_phasors.resize(p.n_states * p.n_s);
  for (std::size_t s = 0; s < p.n_states; ++s) {
    for (std::size_t k = 0; k < p.n_s; ++k) {
      p.state_phasors[s * p.n_s + k] = std::polar(1.0, cb.phase(s, grid.frequency(k)));
    }
  }
  return p;
}

SelectionProblem constant_problem(int bits, const RisGeometry& geom, const LinkGeometry& link,
                                  const OfdmGrid& grid, const OptimizeOptions& opts) {
  SelectionProblem p = base_problem(geom, link, grid, opts);
  const auto phases = constant_phase_states(bits);
  p.n_states = phases.size();
  p.state_phasors.resize(p.n_states * p.n_s);
  for (std::size_t s = 0; s < p.n_states; ++s) {
    const cd ph = std::polar(1.0, phases[s]);
    std::fill_n(p.state_phasors.begin() + static_cast<std::ptrdiff_t>(s * p.n_s), p.n_s, ph);
  }
  return p;
}

std::vector<std::size_t> nearest_states(const std::vector<LinearProfile>& optimal,
                                        const std::vector<LinearProfile>& states,
                                        double slope_scale) {
  if (states.empty()) throw ValidationError("nearest_states: empty state set");
  std::vector<std::size_t> out(optimal.size());
  for (std::size_t j = 0; j < optimal.size(); ++j) {
    double best = INFINITY;
    for (std::size_t s = 0; s < states.size(); ++s) {
      const double da = (optimal[j].a - states[s].a) * slope_scale;
      const double db = circular_difference(optimal[j].b0, states[s].b0);
      const double d = da * da + db * db;
      if (d < best) {
        best = d;
        out[j] = s;
      }
    }
  }
  return out;
}

std::vector<std::size_t> initial_assignment(const ProfileCodebook& cb, const RisGeometry& geom,
                                            const LinkGeometry& link, const OfdmGrid& grid) {
  return nearest_states(optimal_linear(geom, link, cb.f0), codebook_pairs(cb),
                        grid.bandwidth() / 2.0);
}

Assignment optimize_profiles(const ProfileCodebook& cb, const RisGeometry& geom,
                             const LinkGeometry& link, const OfdmGrid& grid,
                             const OptimizeOptions& opts) {
  const SelectionProblem p = arctan_problem(cb, geom, link, grid, opts);
  return coordinate_descent(p, initial_assignment(cb, geom, link, grid),
                            DescentOptions{opts.epsilon, opts.order, 1000});
}

Assignment exhaustive_oracle(const ProfileCodebook& cb, const RisGeometry& geom,
                             const LinkGeometry& link, const OfdmGrid& grid,
                             const OptimizeOptions& opts) {
  return exhaustive_search(arctan_problem(cb, geom, link, grid, opts));
}

Assignment constant_profile_baseline(int bits, const RisGeometry& geom, const LinkGeometry& link,
                                     const OfdmGrid& grid, const OptimizeOptions& opts,
                                     double amplitude) {
  RisGeometry g = geom;
  g.amplitude = amplitude;
  const SelectionProblem p = constant_problem(bits, g, link, grid, opts);
  const auto init = nearest_states(optimal_linear(g, link, grid.f0), constant_pairs(bits),
                                   grid.bandwidth() / 2.0);
  return coordinate_descent(p, init, DescentOptions{opts.epsilon, opts.order, 1000});
}

Assignment ideal_upper_bound(const RisGeometry& geom, const LinkGeometry& link,
                             const OfdmGrid& grid, const OptimizeOptions& opts) {
  const SelectionProblem p = base_problem(geom, link, grid, opts);
  std::vector<cd> r(p.n_s);
  for (std::size_t k = 0; k < p.n_s; ++k) {
    double mag = 0.0;
    for (std::size_t j = 0; j < p.n_elements; ++j) mag += std::abs(p.weights[j * p.n_s + k]);
    const cd b = p.base[k];
    const double b_abs = std::abs(b);
    r[k] = b_abs > 0.0 ? b * ((b_abs + mag) / b_abs) : cd{mag, 0.0};
  }
  Assignment a;
  a.power = allocate_power(r, p.noise, p.budget, p.equal_power);
  a.rate = rate_for(r, a.power, p.noise);
  a.initial_rate = a.rate;
  return a;
}

std::vector<double> codebook_phases(const ProfileCodebook& cb,
                                    const std::vector<std::size_t>& states, const OfdmGrid& grid) {
  std::vector<double> out(states.size() * grid.n_s);
  for (std::size_t j = 0; j < states.size(); ++j) {
    for (std::size_t k = 0; k < grid.n_s; ++k) {
      out[j * grid.n_s + k] = cb.phase(states[j], grid.frequency(k));
    }
  }
  return out;
}

std::vector<double> constant_phases(int bits, const std::vector<std::size_t>& states,
                                    std::size_t n_s) {
  const auto table = constant_phase_states(bits);
  std::vector<double> out(states.size() * n_s);
  for (std::size_t j = 0; j < states.size(); ++j) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(j * n_s), n_s, table.at(states[j]));
  }
  return out;
}

}  // namespace risofdm
