#include "risofdm/channel.hpp"

#include <cmath>
#include <string>

namespace risofdm {

namespace {

void check_matrix(const std::vector<cd>* m, std::size_t expected, const char* what) {
  if (m != nullptr && !m->empty() && m->size() != expected) {
    throw ValidationError(std::string("small-scale term ") + what + " has " +
                          std::to_string(m->size()) + " entries, expected " +
                          std::to_string(expected));
  }
}

std::vector<cd> hop_coefficients(const std::vector<double>& offsets, double distance, double gain,
                                 const OfdmGrid& grid, double los_scale,
                                 const std::vector<cd>* chi) {
  const std::size_t n = offsets.size();
  const std::size_t ns = grid.n_s;
  const bool has_chi = chi != nullptr && !chi->empty();
  std::vector<cd> out(n * ns);
  for (std::size_t k = 0; k < ns; ++k) {
    const double nu = grid.wavenumber(k);
    const double amp = los_scale * path_amplitude(gain, nu, distance);
    for (std::size_t j = 0; j < n; ++j) {
      cd h = std::polar(amp, -nu * (distance + offsets[j]));
      if (has_chi) h += (*chi)[j * ns + k];
      out[j * ns + k] = h;
    }
  }
  return out;
}

}  // namespace

double path_amplitude(double gain, double wavenumber, double distance) {
  return gain / (2.0 * wavenumber * distance);
}

std::vector<cd> incoming_coefficients(const RisGeometry& geom, const LinkGeometry& link,
                                      const OfdmGrid& grid, double los_scale,
                                      const std::vector<cd>* chi) {
  check_matrix(chi, geom.size() * grid.n_s, "chi1");
  return hop_coefficients(incoming_offsets(geom, link.theta1, link.theta1p), link.d1, link.g_t,
                          grid, los_scale, chi);
}

std::vector<cd> outgoing_coefficients(const RisGeometry& geom, const LinkGeometry& link,
                                      const OfdmGrid& grid, double los_scale,
                                      const std::vector<cd>* chi) {
  check_matrix(chi, geom.size() * grid.n_s, "chi2");
  return hop_coefficients(outgoing_offsets(geom, link.theta2, link.theta2p), link.d2, link.g_r,
                          grid, los_scale, chi);
}

std::vector<cd> cascade_weights(const RisGeometry& geom, const LinkGeometry& link,
                                const OfdmGrid& grid, const SmallScaleTerms* small_scale) {
  const double los = small_scale != nullptr ? small_scale->los_scale : 1.0;
  const auto h1 = incoming_coefficients(geom, link, grid, los,
                                        small_scale != nullptr ? &small_scale->chi1 : nullptr);
  const auto h2 = outgoing_coefficients(geom, link, grid, los,
                                        small_scale != nullptr ? &small_scale->chi2 : nullptr);
  std::vector<cd> w(h1.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = geom.amplitude * h1[i] * h2[i];
  return w;
}

std::vector<double> tx_common_phase_alignment(const LinkGeometry& link, const OfdmGrid& grid) {
  std::vector<double> out(grid.n_s);
  const double excess = link.dd - link.d1 - link.d2;
  for (std::size_t k = 0; k < grid.n_s; ++k) out[k] = wrap_to_2pi(grid.wavenumber(k) * excess);
  return out;
}

std::vector<cd> direct_term(const LinkGeometry& link, const OfdmGrid& grid,
                            const ChannelOptions& opts) {
  std::vector<cd> out(grid.n_s, cd{0.0, 0.0});
  if (!opts.include_direct) return out;
  const SmallScaleTerms* ss = opts.small_scale;
  const double los = ss != nullptr ? ss->los_scale : 1.0;
  const bool has_chi = ss != nullptr && !ss->chi_d.empty();
  if (has_chi && ss->chi_d.size() != grid.n_s) {
    throw ValidationError("small-scale term chi_d must have one entry per sub-carrier");
  }
  const std::vector<double> align =
      opts.align_direct ? tx_common_phase_alignment(link, grid) : std::vector<double>{};
  for (std::size_t k = 0; k < grid.n_s; ++k) {
    const double nu = grid.wavenumber(k);
    const double amp = los * path_amplitude(link.g_t * link.g_r, nu, link.dd);
    cd h = std::polar(amp, -nu * link.dd);
    if (has_chi) h += ss->chi_d[k];
    if (opts.align_direct) h *= std::polar(1.0, align[k]);
    out[k] = h;
  }
  return out;
}

std::vector<cd> effective_channel(const RisGeometry& geom, const LinkGeometry& link,
                                  const OfdmGrid& grid, const std::vector<double>& phases,
                                  const ChannelOptions& opts) {
  const std::size_t n = geom.size();
  const std::size_t ns = grid.n_s;
  if (phases.size() != n * ns) {
    throw ValidationError("effective_channel: phase matrix has " + std::to_string(phases.size()) +
                          " entries, expected N * n_s = " + std::to_string(n * ns));
  }
  const auto w = cascade_weights(geom, link, grid, opts.small_scale);
  auto r = direct_term(link, grid, opts);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < ns; ++k) {
      r[k] += w[j * ns + k] * std::polar(1.0, phases[j * ns + k]);
    }
  }
  return r;
}

std::vector<double> aligned_phases(const RisGeometry& geom, const LinkGeometry& link,
                                   const OfdmGrid& grid) {
  const auto off = element_offsets(geom, link);
  const std::size_t ns = grid.n_s;
  std::vector<double> phases(geom.size() * ns);
  for (std::size_t j = 0; j < geom.size(); ++j) {
    const double s = off[j].dy + off[j].dz;
    for (std::size_t k = 0; k < ns; ++k) phases[j * ns + k] = wrap_to_pi(grid.wavenumber(k) * s);
  }
  return phases;
}

}  // namespace risofdm
