#include "risofdm/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "risofdm/units.hpp"

namespace risofdm {

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

ProfileMask ProfileMask::parse(const std::string& name) {
  if (name == "all") return {true, true, true};
  if (name == "arctan") return {true, false, false};
  if (name == "const") return {false, true, false};
  if (name == "ideal") return {false, false, true};
  throw ValidationError("unknown profile '" + name + "' (arctan, const, ideal or all)");
}

const char* to_string(Profile p) {
  switch (p) {
    case Profile::kArctan: return "arctan";
    case Profile::kConstant: return "const";
    case Profile::kIdeal: return "ideal";
  }
  return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double deg(double rad) { return rad * 180.0 / kPi; }

OptimizeOptions optimize_options(const Scenario& sc) {
  OptimizeOptions o;
  o.epsilon = sc.epsilon;
  o.equal_power = sc.equal_power;
  o.include_direct = sc.direct_link;
  o.align_direct = true;
  return o;
}

int bits_for_levels(std::size_t levels) {
  int b = 0;
  while ((std::size_t{1} << b) < levels) ++b;
  if ((std::size_t{1} << b) != levels || b < 1) {
    throw ValidationError("number of levels must be a power of two >= 2");
  }
  return b;
}

}  // namespace

ProfileCodebook scenario_codebook(const Scenario& sc, const ProfileCodebook* given) {
  if (given != nullptr && given->bits == sc.bits && given->f0 == sc.f0) return *given;
  return design_codebook(sc.ris_geometry(), sc.theta1(), sc.theta1p(), sc.grid(), sc.bits,
                         sc.design_options());
}

Scenario apply_sweep_value(const Scenario& sc, SweepVariable variable, double value) {
  Scenario out = sc;
  auto as_count = [&](const char* what) {
    if (!(value >= 1.0) || value != std::floor(value)) {
      throw ValidationError(std::string(what) + " sweep values must be positive integers");
    }
    return static_cast<std::size_t>(value);
  };
  switch (variable) {
    case SweepVariable::kTheta2: break;
    case SweepVariable::kBits: out.bits = static_cast<int>(as_count("bits")); break;
    case SweepVariable::kElements: out.n_y = as_count("n_elements"); break;
    case SweepVariable::kSubcarriers: out.n_s = as_count("n_subcarriers"); break;
    case SweepVariable::kTheta1: out.theta1_deg = value; break;
  }
  out.validate();
  return out;
}

std::vector<double> sweep_values(const Scenario& sc) {
  if (!sc.values.empty()) return sc.values;
  if (sc.stop < sc.start) throw ValidationError("sweep.stop must not be below sweep.start");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((sc.stop - sc.start) / sc.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sc.start + sc.step * static_cast<double>(i));
  return out;
}

std::vector<SweepRow> run_theta2_points(const Scenario& sc, const ProfileCodebook& cb,
                                        const std::vector<double>& theta2_grid, ProfileMask mask,
                                        double value, std::size_t threads) {
  if (mask.arctan && cb.bits != sc.bits) {
    throw ValidationError("codebook was designed for " + std::to_string(cb.bits) +
                          " bits but the scenario uses " + std::to_string(sc.bits));
  }
  const RisGeometry geom = sc.ris_geometry();
  const OfdmGrid grid = sc.grid();
  const OptimizeOptions opts = optimize_options(sc);
  const FadingConfig fading = sc.fading();

  auto point = [&](std::size_t i) {
    const double theta2 = theta2_grid[i];
    const LinkGeometry link = sc.link(theta2);
    std::vector<SweepRow> rows;
    auto record = [&](Profile p, const Assignment& a, double seconds) {
      SweepRow r;
      r.value = value;
      r.theta2 = theta2;
      r.profile = p;
      r.rate = a.rate;
      r.initial_rate = a.initial_rate;
      r.iterations = a.passes;
      r.evaluations = a.evaluations;
      r.seconds = seconds;
      r.fading_mean = kNaN;
      r.fading_stddev = kNaN;
      rows.push_back(r);
    };
    auto timed = [](auto&& fn) {
      const auto t0 = std::chrono::steady_clock::now();
      auto result = fn();
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return std::make_pair(std::move(result), s);
    };
    auto attach = [&](const FadingStats& st) {
      rows.back().fading_mean = st.mean;
      rows.back().fading_stddev = st.stddev;
    };
    if (mask.arctan) {
      auto [a, s] = timed([&] { return optimize_profiles(cb, geom, link, grid, opts); });
      record(Profile::kArctan, a, s);
      if (sc.fading_enabled) attach(evaluate_under_fading(a, cb, fading, geom, link, grid, opts));
    }
    if (mask.constant) {
      auto [a, s] =
          timed([&] { return constant_profile_baseline(sc.bits, geom, link, grid, opts, 1.0); });
      record(Profile::kConstant, a, s);
      if (sc.fading_enabled) {
        RisGeometry unit = geom;
        unit.amplitude = 1.0;
        attach(evaluate_under_fading(constant_phases(sc.bits, a.state_index, grid.n_s), 1.0,
                                     fading, unit, link, grid, opts, &a.power));
      }
    }
    if (mask.ideal) {
      auto [a, s] = timed([&] { return ideal_upper_bound(geom, link, grid, opts); });
      record(Profile::kIdeal, a, s);
      if (sc.fading_enabled) {
        attach(evaluate_under_fading(aligned_phases(geom, link, grid), geom.amplitude, fading,
                                     geom, link, grid, opts, &a.power));
      }
    }
    return rows;
  };

  const auto per_point =
      parallel_map<std::vector<SweepRow>>(theta2_grid.size(), threads, point);
  std::vector<SweepRow> out;
  for (const auto& rows : per_point) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

std::vector<SweepRow> run_sweep(const Scenario& sc, const ProfileCodebook* given, ProfileMask mask,
                                std::size_t threads) {
  const auto values = sweep_values(sc);
  if (sc.variable == SweepVariable::kTheta2) {
    std::vector<double> grid;
    for (double v : values) grid.push_back(v * kPi / 180.0);
    ProfileCodebook cb;
    cb.bits = sc.bits;
    if (mask.arctan) {
      if (given != nullptr && given->bits != sc.bits) {
        throw ValidationError("codebook bits do not match the scenario");
      }
      cb = scenario_codebook(sc, given);
    }
    std::vector<SweepRow> rows = run_theta2_points(sc, cb, grid, mask, 0.0, threads);
    for (auto& r : rows) r.value = deg(r.theta2);
    return rows;
  }
  std::vector<SweepRow> out;
  for (double v : values) {
    const Scenario point = apply_sweep_value(sc, sc.variable, v);
    ProfileCodebook cb;
    cb.bits = point.bits;
    if (mask.arctan) {
      // A supplied codebook only matches the unswept configuration.
      const bool reusable = sc.variable == SweepVariable::kBits;
      cb = scenario_codebook(point, reusable ? given : nullptr);
    }
    auto rows = run_theta2_points(point, cb, point.theta2_grid(), mask, v, threads);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

SweepResult to_sweep_result(const std::vector<SweepRow>& rows) {
  SweepResult s;
  std::map<double, std::size_t> index;
  for (const auto& r : rows) {
    if (index.emplace(r.theta2, s.theta2.size()).second) {
      s.theta2.push_back(r.theta2);
      s.rate_arctan.push_back(kNaN);
      s.rate_const.push_back(kNaN);
      s.rate_ideal.push_back(kNaN);
    }
    const std::size_t i = index.at(r.theta2);
    switch (r.profile) {
      case Profile::kArctan: s.rate_arctan[i] = r.rate; break;
      case Profile::kConstant: s.rate_const[i] = r.rate; break;
      case Profile::kIdeal: s.rate_ideal[i] = r.rate; break;
    }
  }
  return s;
}

SweepResult coverage_sweep(const Scenario& sc, std::size_t levels, const ProfileCodebook* given,
                           std::size_t threads) {
  Scenario point = sc;
  point.bits = bits_for_levels(levels);
  const ProfileCodebook cb = scenario_codebook(point, given);
  return to_sweep_result(
      run_theta2_points(point, cb, point.theta2_grid(), {true, true, false}, 0.0, threads));
}

Tables run_tables(const Scenario& sc, const ProfileCodebook* given, std::size_t threads) {
  Tables t;
  std::map<std::size_t, SweepResult> by_levels;
  for (const auto& row : sc.coverage_rows) {
    auto it = by_levels.find(row.levels);
    if (it == by_levels.end()) {
      it = by_levels.emplace(row.levels, coverage_sweep(sc, row.levels, given, threads)).first;
    }
    t.bits_table.push_back({row.levels, row.r_th, static_cast<double>(row.levels),
                            coverage_percentage(it->second, Profile::kArctan, row.r_th),
                            coverage_percentage(it->second, Profile::kConstant, row.r_th)});
  }
  for (double theta1 : sc.theta1_values_deg) {
    Scenario point = sc;
    point.theta1_deg = theta1;
    const SweepResult s = coverage_sweep(point, sc.theta1_levels, nullptr, threads);
    t.theta1_table.push_back({sc.theta1_levels, sc.theta1_r_th, theta1,
                              coverage_percentage(s, Profile::kArctan, sc.theta1_r_th),
                              coverage_percentage(s, Profile::kConstant, sc.theta1_r_th)});
  }
  for (std::size_t ns : sc.ns_values) {
    Scenario point = sc;
    point.n_s = ns;
    point.validate();
    const SweepResult s = coverage_sweep(point, sc.ns_levels, nullptr, threads);
    t.ns_table.push_back({ns, sc.ns_levels, win_fraction_and_max_gain(s)});
  }
  return t;
}

namespace {

OfdmGrid miso_grid(const Scenario& sc) {
  OfdmGrid g = sc.grid();
  g.n_s = sc.miso_n_s;
  g.total_power = dbm_to_watt(sc.miso_power_dbm);
  g.validate();
  return g;
}

}  // namespace

ProfileCodebook miso_codebook(const Scenario& sc) {
  return design_codebook_miso(sc.tx_array(), sc.ris_geometry(), miso_grid(sc), sc.miso_bits,
                              sc.design_options());
}

MisoCell miso_cell(const Scenario& sc, const ProfileCodebook& cb, std::size_t n_ue,
                   Precoder scheme, Profile profile, std::size_t threads) {
  if (profile == Profile::kIdeal) throw ValidationError("the MISO runner has no ideal profile");
  const TxArray tx = sc.tx_array();
  if (scheme == Precoder::kZF && n_ue > tx.size()) {
    throw ValidationError("zero-forcing needs at least as many Tx antennas as UEs");
  }
  if (profile == Profile::kArctan && cb.bits != sc.miso_bits) {
    throw ValidationError("codebook bits do not match miso.bits");
  }
  RisGeometry geom = sc.ris_geometry();
  if (profile == Profile::kConstant) geom.amplitude = 1.0;
  const OfdmGrid grid = miso_grid(sc);
  const auto ues = ues_on_half_circle(sc.ris, sc.ue_radius, n_ue);
  const AntennaGains gains = sc.gains();
  FadingConfig fading = sc.fading();
  fading.kappa = sc.miso_kappa;
  fading.draws = sc.miso_draws;
  const auto pairs =
      profile == Profile::kArctan ? codebook_state_pairs(cb) : constant_state_pairs(sc.miso_bits);
  DescentOptions descent;
  descent.epsilon = sc.epsilon;

  const auto rates = parallel_map<double>(fading.draws, threads, [&](std::size_t d) {
    MisoLinkOptions lo;
    lo.include_direct = sc.direct_link;
    lo.fading = &fading;
    lo.draw = d;
    const MisoModel model = build_miso_model(tx, geom, ues, grid, gains, lo);
    const MisoSelection sel =
        profile == Profile::kArctan
            ? miso_arctan_selection(model, cb, grid, scheme, sc.equal_power)
            : miso_constant_selection(model, sc.miso_bits, grid, scheme, sc.equal_power);
    const auto init = initial_assignment_miso(sel, pairs, tx, geom, ues, gains, grid);
    return optimize_profiles_miso(sel, init, descent).assignment.rate;
  });

  MisoCell cell;
  cell.n_ue = n_ue;
  cell.n_y = sc.n_y;
  cell.scheme = scheme;
  cell.profile = profile;
  cell.draws = rates.size();
  cell.mean_sum_rate = mean(rates);
  double var = 0.0;
  for (double r : rates) var += (r - cell.mean_sum_rate) * (r - cell.mean_sum_rate);
  cell.stddev = rates.size() > 1 ? std::sqrt(var / static_cast<double>(rates.size() - 1)) : 0.0;
  return cell;
}

std::vector<MisoCell> run_miso(const Scenario& sc, const ProfileCodebook* given,
                               std::size_t threads) {
  std::vector<Precoder> schemes;
  if (sc.miso_scheme != "mrt") schemes.push_back(Precoder::kZF);
  if (sc.miso_scheme != "zf") schemes.push_back(Precoder::kMRT);
  const std::size_t q = sc.tx_array().size();
  for (std::size_t l : sc.ue_counts) {
    if (l == 0) throw ValidationError("miso.l entries must be positive");
    if (sc.miso_scheme != "mrt" && l > q) {
      throw ValidationError("zero-forcing with " + std::to_string(l) + " UEs needs at least " +
                            std::to_string(l) + " Tx antennas (have " + std::to_string(q) + ")");
    }
  }
  std::vector<MisoCell> out;
  for (std::size_t n_y : sc.miso_n_y) {
    Scenario point = sc;
    point.n_y = n_y;
    point.validate();
    const ProfileCodebook cb =
        (given != nullptr && sc.miso_n_y.size() == 1 && given->bits == sc.miso_bits)
            ? *given
            : miso_codebook(point);
    for (std::size_t l : sc.ue_counts) {
      for (Precoder s : schemes) {
        for (Profile p : {Profile::kArctan, Profile::kConstant}) {
          out.push_back(miso_cell(point, cb, l, s, p, threads));
        }
      }
    }
  }
  return out;
}

}  // namespace risofdm
