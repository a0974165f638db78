#include "risofdm/fading.hpp"

#include <cmath>

#include "risofdm/rng.hpp"
#include "risofdm/units.hpp"

namespace risofdm {

void FadingConfig::validate() const {
  if (!(kappa >= 0.0)) throw ValidationError("FadingConfig: kappa must be non-negative");
  if (!(sigma2 >= 0.0)) throw ValidationError("FadingConfig: sigma2 must be non-negative");
  if (draws < 1) throw ValidationError("FadingConfig: draws must be at least 1");
}

double FadingConfig::los_scale() const {
  if (std::isinf(kappa)) return 1.0;
  return std::sqrt(kappa / (kappa + 1.0));
}

double FadingConfig::diffuse_scale() const {
  if (std::isinf(kappa)) return 0.0;
  return std::sqrt(sigma2 / (kappa + 1.0));
}

std::uint32_t stream_id(FadingLink link, std::size_t index) {
  if (index >= 0x10000u) throw ValidationError("stream_id: index too large");
  return static_cast<std::uint32_t>(link) + static_cast<std::uint32_t>(index);
}

std::vector<cd> sample_diffuse(const FadingConfig& cfg, std::size_t draw, std::uint32_t stream,
                               std::size_t count, const OfdmGrid& grid, double gain,
                               double distance) {
  const GaussianField field(cfg.seed);
  const double diffuse = cfg.diffuse_scale();
  const std::size_t ns = grid.n_s;
  const auto d = static_cast<std::uint32_t>(draw);
  std::vector<cd> out(count * ns);
  for (std::size_t k = 0; k < ns; ++k) {
    const double amp = diffuse * path_amplitude(gain, grid.wavenumber(k), distance);
    for (std::size_t j = 0; j < count; ++j) {
      out[j * ns + k] =
          amp * field.sample(d, stream, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k));
    }
  }
  return out;
}

SmallScaleTerms sample_rician_links(const FadingConfig& cfg, std::size_t draw,
                                    const RisGeometry& geom, const LinkGeometry& link,
                                    const OfdmGrid& grid, std::size_t tx_index,
                                    std::size_t ue_index) {
  cfg.validate();
  SmallScaleTerms t;
  t.los_scale = cfg.los_scale();
  t.chi1 = sample_diffuse(cfg, draw, stream_id(FadingLink::kTxRis, tx_index), geom.size(), grid,
                          link.g_t, link.d1);
  t.chi2 = sample_diffuse(cfg, draw, stream_id(FadingLink::kRisUe, ue_index), geom.size(), grid,
                          link.g_r, link.d2);
  t.chi_d = sample_diffuse(cfg, draw, stream_id(FadingLink::kDirect, tx_index * 256 + ue_index), 1,
                           grid, link.g_t * link.g_r, link.dd);
  return t;
}

FadingStats evaluate_under_fading(const std::vector<double>& phases, double amplitude,
                                  const FadingConfig& cfg, const RisGeometry& geom,
                                  const LinkGeometry& link, const OfdmGrid& grid,
                                  const OptimizeOptions& opts,
                                  const std::vector<double>* los_power) {
  cfg.validate();
  if (!cfg.rewaterfill && (los_power == nullptr || los_power->size() != grid.n_s)) {
    throw ValidationError("evaluate_under_fading: frozen power needs the LoS power vector");
  }
  RisGeometry g = geom;
  g.amplitude = amplitude;
  FadingStats st;
  st.rates.reserve(cfg.draws);
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    const SmallScaleTerms terms = sample_rician_links(cfg, d, g, link, grid);
    OptimizeOptions o = opts;
    o.small_scale = &terms;
    const auto r = effective_channel(g, link, grid, phases, o.channel_options());
    const std::vector<double> power =
        cfg.rewaterfill ? allocate_power(r, grid.noise_per_subcarrier(), grid.total_power,
                                         opts.equal_power)
                        : *los_power;
    st.rates.push_back(achievable_rate(r, power, grid));
  }
  double sum = 0.0;
  for (double v : st.rates) sum += v;
  st.mean = sum / static_cast<double>(st.rates.size());
  double var = 0.0;
  for (double v : st.rates) var += (v - st.mean) * (v - st.mean);
  st.stddev = st.rates.size() > 1 ? std::sqrt(var / static_cast<double>(st.rates.size() - 1)) : 0.0;
  return st;
}

FadingStats evaluate_under_fading(const Assignment& assignment, const ProfileCodebook& cb,
                                  const FadingConfig& cfg, const RisGeometry& geom,
                                  const LinkGeometry& link, const OfdmGrid& grid,
                                  const OptimizeOptions& opts) {
  const auto phases = codebook_phases(cb, assignment.state_index, grid);
  return evaluate_under_fading(phases, geom.amplitude, cfg, geom, link, grid, opts,
                               &assignment.power);
}

}  // namespace risofdm
