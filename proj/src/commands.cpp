#include "risofdm/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "risofdm/units.hpp"

namespace risofdm {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void cmd_design_sets(const Scenario& sc, std::ostream& out, const CommandOptions& opts) {
  sc.validate();
  const int bits = opts.miso ? sc.miso_bits : sc.bits;
  if (bits % 2 != 0) {
    throw ValidationError("design-sets: bits must be even for a stored codebook (got " +
                          std::to_string(bits) + ")");
  }
  if (opts.miso) {
    Scenario m = sc;
    if (m.miso_n_y.size() == 1) m.n_y = m.miso_n_y.front();
    write_codebook(out, miso_codebook(m));
  } else {
    write_codebook(out, scenario_codebook(sc));
  }
}

void cmd_sweep(const Scenario& sc, const ProfileCodebook* cb, std::ostream& out,
               const CommandOptions& opts) {
  const auto rows = run_sweep(sc, cb, opts.profiles, opts.threads);
  out << kSweepCsvHeader;
  const char* variable = to_string(sc.variable);
  for (const auto& r : rows) {
    out << variable << ',' << format_double(r.value) << ','
        << format_double(r.theta2 * 180.0 / kPi) << ',' << to_string(r.profile) << ','
        << format_double(r.rate) << ',' << format_double(r.initial_rate) << ',' << r.iterations
        << ',' << r.evaluations << ',' << format_double(r.seconds) << ','
        << format_double(r.fading_mean) << ',' << format_double(r.fading_stddev) << '\n';
  }
}

void cmd_tables(const Scenario& sc, const ProfileCodebook* cb, std::ostream& by_levels,
                std::ostream& by_theta1, std::ostream& by_ns, const CommandOptions& opts) {
  const Tables t = run_tables(sc, cb, opts.threads);
  by_levels << kBitsTableHeader;
  for (const auto& c : t.bits_table) {
    by_levels << c.levels << ',' << format_double(c.r_th) << ','
              << format_double(c.arctan_percent) << ',' << format_double(c.const_percent) << '\n';
  }
  by_theta1 << kTheta1TableHeader;
  for (const auto& c : t.theta1_table) {
    by_theta1 << format_double(c.key) << ',' << c.levels << ',' << format_double(c.r_th) << ','
              << format_double(c.arctan_percent) << ',' << format_double(c.const_percent) << '\n';
  }
  by_ns << kNsTableHeader;
  for (const auto& c : t.ns_table) {
    by_ns << c.n_s << ',' << c.levels << ',' << format_double(c.stats.win_percent) << ','
          << format_double(c.stats.max_gain_percent) << '\n';
  }
}

void cmd_miso(const Scenario& sc, const ProfileCodebook* cb, std::ostream& out,
              const CommandOptions& opts) {
  const auto cells = run_miso(sc, cb, opts.threads);
  out << kMisoCsvHeader;
  for (const auto& c : cells) {
    out << c.n_ue << ',' << c.n_y << ',' << to_string(c.scheme) << ',' << to_string(c.profile)
        << ',' << format_double(c.mean_sum_rate) << ',' << format_double(c.stddev) << ','
        << c.draws << '\n';
  }
}

void cmd_fit(const Scenario& sc, const LinearProfile& linear, std::ostream& out) {
  const OfdmGrid grid = sc.grid();
  FitOptions fo = sc.design_options().fit;
  const FitResult fit = fit_arctan(linear, grid, fo);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.n_s; ++k) {
    const double f = grid.frequency(k);
    worst = std::max(worst, std::abs(circular_difference(phase_at(fit.profile, f, grid.f0),
                                                         linear_phase_at(linear, f, grid.f0))));
  }
  out << kFitCsvHeader << format_double(linear.a) << ',' << format_double(linear.b0) << ','
      << format_double(fit.profile.m) << ',' << format_double(fit.profile.i0) << ','
      << format_double(fit.mse) << ',' << format_double(worst) << '\n';
}

}  // namespace risofdm
