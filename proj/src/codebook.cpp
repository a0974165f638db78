#include "risofdm/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "risofdm/units.hpp"

namespace risofdm {

std::vector<LinearProfile> optimal_linear(const RisGeometry& geom, double theta1, double theta1p,
                                          double theta2, double theta2p, double f0) {
  const auto off = element_offsets(geom, theta1, theta1p, theta2, theta2p);
  std::vector<LinearProfile> out(off.size());
  for (std::size_t j = 0; j < off.size(); ++j) {
    const double s = off[j].dy + off[j].dz;
    out[j] = make_linear(-kTwoPi * s / kSpeedOfLight, kTwoPi * f0 * s / kSpeedOfLight);
  }
  return out;
}

std::vector<LinearProfile> optimal_linear(const RisGeometry& geom, const LinkGeometry& link,
                                          double f0) {
  return optimal_linear(geom, link.theta1, link.theta1p, link.theta2, link.theta2p, f0);
}

DirectionGrid direction_grid(double delta_theta) {
  if (!(delta_theta > 0.0)) throw ValidationError("direction grid step must be positive");
  return {angle_grid(kPi / 2.0, 1.5 * kPi, delta_theta), angle_grid(0.0, kPi, delta_theta)};
}

PairSet build_pair_set(const RisGeometry& geom, double theta1, double theta1p,
                       double delta_theta, double f0) {
  const DirectionGrid dirs = direction_grid(delta_theta);
  PairSet set;
  set.theta1 = theta1;
  set.theta1p = theta1p;
  set.delta_theta = delta_theta;
  const std::size_t total = geom.size() * dirs.theta2.size() * dirs.theta2p.size();
  if (total == 0) throw ValidationError("build_pair_set: empty direction grid");
  set.a.reserve(total);
  set.b0.reserve(total);
  for (double t2 : dirs.theta2) {
    for (double t2p : dirs.theta2p) {
      for (const auto& lp : optimal_linear(geom, theta1, theta1p, t2, t2p, f0)) {
        set.a.push_back(lp.a);
        set.b0.push_back(lp.b0);
      }
    }
  }
  return set;
}

void append_optimal_slopes(const RisGeometry& geom, double theta1, double theta1p,
                           const DirectionGrid& directions, std::vector<double>& out) {
  const std::size_t n = geom.size();
  std::vector<double> ny(n), nz(n);
  for (std::size_t j = 0; j < n; ++j) {
    ny[j] = geom.index_y(j);
    nz[j] = geom.index_z(j);
  }
  const double scale = -kTwoPi * geom.spacing / kSpeedOfLight;
  out.reserve(out.size() + n * directions.theta2.size() * directions.theta2p.size());
  for (double t2 : directions.theta2) {
    for (double t2p : directions.theta2p) {
      const double cy = std::cos(theta1) * std::sin(theta1p) + std::cos(t2) * std::sin(t2p);
      const double cz = std::cos(theta1p) + std::cos(t2p);
      for (std::size_t j = 0; j < n; ++j) out.push_back(scale * (ny[j] * cy + nz[j] * cz));
    }
  }
}

std::size_t slope_count(int bits) {
  if (bits < 1 || bits > 20) throw ValidationError("bits must lie in [1, 20]");
  return std::size_t{1} << ((bits + 1) / 2);
}

std::size_t intercept_count(int bits) {
  if (bits < 1 || bits > 20) throw ValidationError("bits must lie in [1, 20]");
  return std::size_t{1} << (bits / 2);
}

std::vector<double> quantile_means(std::vector<double>& samples, std::size_t count) {
  if (count == 0) throw ValidationError("quantile_means: need at least one quantile");
  const std::size_t s = samples.size();
  if (s == 0) throw ValidationError("quantile_means: empty sample set");
  {
    // Distinct-value check, stopping as soon as enough values were seen.
    std::vector<double> seen;
    for (double v : samples) {
      if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
        seen.push_back(v);
        if (seen.size() >= count) break;
      }
    }
    if (seen.size() < count) {
      throw ValidationError("quantile_means: " + std::to_string(seen.size()) +
                            " distinct samples cannot fill " + std::to_string(count) +
                            " quantiles");
    }
  }
  std::vector<std::size_t> edges(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    edges[i] = i * (s / count) + (i * (s % count)) / count;  // floor(i s / count)
  }
  // Partition so that every index range holds exactly the sorted order's members.
  for (std::size_t i = 1; i < count; ++i) {
    std::nth_element(samples.begin() + static_cast<std::ptrdiff_t>(edges[i - 1]),
                     samples.begin() + static_cast<std::ptrdiff_t>(edges[i]), samples.end());
  }
  std::vector<double> means(count);
  for (std::size_t i = 0; i < count; ++i) {
    long double acc = 0.0L;
    for (std::size_t t = edges[i]; t < edges[i + 1]; ++t) acc += samples[t];
    means[i] = static_cast<double>(acc / static_cast<long double>(edges[i + 1] - edges[i]));
  }
  return means;
}

std::vector<double> select_slope_set(std::vector<double> samples, int bits) {
  return quantile_means(samples, slope_count(bits));
}

std::vector<std::vector<double>> select_intercept_sets(int bits) {
  const std::size_t slopes = slope_count(bits);
  const std::size_t c = intercept_count(bits);
  const double step = kTwoPi / static_cast<double>(c);
  std::vector<std::vector<double>> sets(slopes, std::vector<double>(c));
  for (std::size_t t = 0; t < slopes; ++t) {
    const double shift = (t % 2 == 0) ? 0.0 : kPi / static_cast<double>(c);
    for (std::size_t u = 0; u < c; ++u) sets[t][u] = kPi - shift - step * static_cast<double>(u);
  }
  return sets;
}

double profile_mse(const PhaseProfile& p, const std::vector<double>& target, const OfdmGrid& grid) {
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.n_s; ++k) {
    const double e = circular_difference(phase_at(p, grid.frequency(k), grid.f0), target[k]);
    acc += e * e;
  }
  return acc / static_cast<double>(grid.n_s);
}

namespace {

struct Candidate {
  double x;  // m * half bandwidth
  double i0;
  double mse;
};

// Pattern search in (x, i0) with halving steps, kept inside the box.
Candidate refine(Candidate start, double x_step, double i0_step, double x_max, double i0_max,
                 const std::vector<double>& target, const OfdmGrid& grid, double half_bw) {
  auto eval = [&](double x, double i0) {
    return profile_mse(PhaseProfile{x / half_bw, i0}, target, grid);
  };
  Candidate best = start;
  while (x_step > 1e-12 * std::max(1.0, std::abs(best.x)) || i0_step > 1e-12) {
    bool moved = false;
    const double moves[4][2] = {{x_step, 0.0}, {-x_step, 0.0}, {0.0, i0_step}, {0.0, -i0_step}};
    for (const auto& mv : moves) {
      const double x = std::clamp(best.x + mv[0], -x_max, x_max);
      const double i0 = std::clamp(best.i0 + mv[1], -i0_max, i0_max);
      const double v = eval(x, i0);
      if (v < best.mse) {
        best = {x, i0, v};
        moved = true;
      }
    }
    if (!moved) {
      x_step *= 0.5;
      i0_step *= 0.5;
    }
  }
  return best;
}

}  // namespace

FitResult fit_arctan_samples(const std::vector<double>& target, const OfdmGrid& grid,
                             const FitOptions& opts) {
  grid.validate();
  if (target.size() != grid.n_s) throw ValidationError("fit_arctan: target length must equal n_s");
  const double half_bw = grid.bandwidth() / 2.0;
  const double m_max = opts.m_max > 0.0 ? opts.m_max : 50.0 * kTwoPi / grid.bandwidth();
  const double x_max = m_max * half_bw;
  if (!(opts.i0_max > 0.0) || opts.m_points_per_sign < 1 || opts.i0_points < 2) {
    throw ValidationError("fit_arctan: degenerate search ranges");
  }

  // Coarse grid: x = 0 plus log-spaced magnitudes of both signs.
  const double x_min = std::min(1e-3, x_max);
  std::vector<double> xs{0.0};
  const std::size_t np = opts.m_points_per_sign;
  for (std::size_t i = 0; i < np; ++i) {
    const double t = np == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(np - 1);
    const double mag = x_min * std::pow(x_max / x_min, t);
    xs.push_back(mag);
    xs.push_back(-mag);
  }
  std::vector<double> i0s(opts.i0_points);
  for (std::size_t i = 0; i < opts.i0_points; ++i) {
    i0s[i] = -opts.i0_max + 2.0 * opts.i0_max * static_cast<double>(i) /
                                static_cast<double>(opts.i0_points - 1);
  }

  std::vector<Candidate> cands;
  cands.reserve(xs.size() * i0s.size());
  for (double x : xs) {
    for (double i0 : i0s) {
      cands.push_back({x, i0, profile_mse(PhaseProfile{x / half_bw, i0}, target, grid)});
    }
  }
  auto better = [](const Candidate& l, const Candidate& r) {
    if (l.mse != r.mse) return l.mse < r.mse;
    if (l.x != r.x) return l.x < r.x;
    return l.i0 < r.i0;
  };
  const std::size_t keep = std::min(opts.seeds, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(),
                    better);
  Candidate best = cands.front();

  if (opts.refine) {
    std::vector<Candidate> seeds(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep));
    // Tangent seed: matches the target's phase and slope at the centre sub-carrier.
    {
      const std::size_t kc = grid.n_s / 2 == 0 ? 0 : grid.n_s / 2 - 1;
      const double f_c = grid.frequency(kc);
      const double phi_c = target[kc];
      double slope = 0.0;
      if (grid.n_s >= 2) {
        const std::size_t k1 = std::min(kc + 1, grid.n_s - 1);
        const std::size_t k0 = k1 - 1;
        slope = circular_difference(target[k1], target[k0]) / grid.delta_f;
      }
      const double u = std::clamp(std::tan(-phi_c / 2.0), -opts.i0_max, opts.i0_max);
      const double m = -slope * (1.0 + u * u) / 2.0;
      const double i0 = std::clamp(u - m * (f_c - grid.f0), -opts.i0_max, opts.i0_max);
      const double x = std::clamp(m * half_bw, -x_max, x_max);
      seeds.push_back({x, i0, profile_mse(PhaseProfile{x / half_bw, i0}, target, grid)});
    }
    const double i0_step = 2.0 * opts.i0_max / static_cast<double>(opts.i0_points - 1);
    for (const Candidate& s : seeds) {
      const double x_step = std::max(std::abs(s.x) * 0.5, x_min);
      const Candidate c = refine(s, x_step, i0_step, x_max, opts.i0_max, target, grid, half_bw);
      if (better(c, best)) best = c;
    }
  }
  return FitResult{PhaseProfile{best.x / half_bw, best.i0}, best.mse};
}

FitResult fit_arctan(const LinearProfile& linear, const OfdmGrid& grid, const FitOptions& opts) {
  std::vector<double> target(grid.n_s);
  for (std::size_t k = 0; k < grid.n_s; ++k) {
    target[k] = linear_phase_at(linear, grid.frequency(k), grid.f0);
  }
  return fit_arctan_samples(target, grid, opts);
}

ProfileCodebook codebook_from_slopes(const std::vector<double>& slopes, int bits,
                                     const OfdmGrid& grid, const FitOptions& fit) {
  if (slopes.size() != slope_count(bits)) {
    throw ValidationError("codebook_from_slopes: slope count does not match bits");
  }
  ProfileCodebook cb;
  cb.bits = bits;
  cb.f0 = grid.f0;
  cb.slopes_a = slopes;
  cb.intercepts_b = select_intercept_sets(bits);
  for (std::size_t t = 0; t < slopes.size(); ++t) {
    for (std::size_t u = 0; u < cb.intercepts_b[t].size(); ++u) {
      CodebookEntry e;
      e.slope_index = t;
      e.intercept_index = u;
      e.linear = LinearProfile{slopes[t], cb.intercepts_b[t][u]};
      const FitResult r = fit_arctan(e.linear, grid, fit);
      e.profile = r.profile;
      e.fit_mse = r.mse;
      cb.entries.push_back(e);
    }
  }
  return cb;
}

ProfileCodebook design_codebook(const RisGeometry& geom, double theta1, double theta1p,
                                const OfdmGrid& grid, int bits, const DesignOptions& opts) {
  geom.validate();
  grid.validate();
  std::vector<double> slopes;
  append_optimal_slopes(geom, theta1, theta1p, direction_grid(opts.delta_theta), slopes);
  const auto set = quantile_means(slopes, slope_count(bits));
  return codebook_from_slopes(set, bits, grid, opts.fit);
}

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    throw ValidationError("codebook line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  return v;
}

}  // namespace

void write_codebook(std::ostream& os, const ProfileCodebook& cb) {
  os << "# risofdm codebook v1\n";
  os << "# record: index a[rad/Hz] b0[rad] m[1/Hz] i0 fit_mse[rad^2]\n";
  os << "bits " << cb.bits << "\n";
  os << "f0 " << hex(cb.f0) << "\n";
  for (std::size_t s = 0; s < cb.entries.size(); ++s) {
    const auto& e = cb.entries[s];
    os << s << ' ' << hex(e.linear.a) << ' ' << hex(e.linear.b0) << ' ' << hex(e.profile.m) << ' '
       << hex(e.profile.i0) << ' ' << hex(e.fit_mse) << "\n";
  }
}

ProfileCodebook read_codebook(std::istream& is) {
  ProfileCodebook cb;
  bool have_bits = false;
  bool have_f0 = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "bits" && tok.size() == 2) {
      cb.bits = static_cast<int>(parse_double(tok[1], lineno));
      slope_count(cb.bits);
      have_bits = true;
    } else if (tok[0] == "f0" && tok.size() == 2) {
      cb.f0 = parse_double(tok[1], lineno);
      have_f0 = true;
    } else if (tok.size() == 6) {
      if (!have_bits) throw ValidationError("codebook: record before 'bits' header");
      const auto index = static_cast<std::size_t>(parse_double(tok[0], lineno));
      if (index != cb.entries.size()) {
        throw ValidationError("codebook line " + std::to_string(lineno) + ": records out of order");
      }
      CodebookEntry e;
      e.slope_index = index / intercept_count(cb.bits);
      e.intercept_index = index % intercept_count(cb.bits);
      e.linear.a = parse_double(tok[1], lineno);
      e.linear.b0 = parse_double(tok[2], lineno);
      e.profile.m = parse_double(tok[3], lineno);
      e.profile.i0 = parse_double(tok[4], lineno);
      e.fit_mse = parse_double(tok[5], lineno);
      cb.entries.push_back(e);
    } else {
      throw ValidationError("codebook line " + std::to_string(lineno) + ": unrecognized record");
    }
  }
  if (!have_bits || !have_f0) throw ValidationError("codebook: missing 'bits' or 'f0' header");
  const std::size_t expected = slope_count(cb.bits) * intercept_count(cb.bits);
  if (cb.entries.size() != expected) {
    throw ValidationError("codebook: expected " + std::to_string(expected) + " records, found " +
                          std::to_string(cb.entries.size()));
  }
  cb.slopes_a.assign(slope_count(cb.bits), 0.0);
  cb.intercepts_b.assign(slope_count(cb.bits), std::vector<double>(intercept_count(cb.bits)));
  for (const auto& e : cb.entries) {
    cb.slopes_a[e.slope_index] = e.linear.a;
    cb.intercepts_b[e.slope_index][e.intercept_index] = e.linear.b0;
  }
  return cb;
}

void save_codebook(const std::string& path, const ProfileCodebook& cb) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  write_codebook(os, cb);
  if (!os) throw ValidationError("failed writing '" + path + "'");
}

ProfileCodebook load_codebook(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open codebook '" + path + "'");
  return read_codebook(is);
}

}  // namespace risofdm
