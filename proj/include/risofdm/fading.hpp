#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "risofdm/channel.hpp"
#include "risofdm/codebook.hpp"
#include "risofdm/optimizer.hpp"

namespace risofdm {

struct FadingConfig {
  double kappa = 200.0;
  double sigma2 = 1.0;
  std::uint64_t seed = 1;
  std::size_t draws = 100;
  // When false the power vector of the LoS design is kept for every draw.
  bool rewaterfill = true;

  void validate() const;
  double los_scale() const;
  double diffuse_scale() const;
};

// Stream identifiers of the Gaussian field. Tx-side streams are offset by the
// Tx antenna index and UE-side streams by the UE index in multi-user runs.
enum class FadingLink : std::uint32_t {
  kTxRis = 0x10000u,
  kRisUe = 0x20000u,
  kDirect = 0x30000u,
};
std::uint32_t stream_id(FadingLink link, std::size_t index = 0);

// Diffuse terms of one hop for `count` elements: entry (j, k) is
// sqrt(sigma2 / (kappa + 1)) * G / (2 nu_k distance) * l(draw, stream, j, k).
std::vector<cd> sample_diffuse(const FadingConfig& cfg, std::size_t draw, std::uint32_t stream,
                               std::size_t count, const OfdmGrid& grid, double gain,
                               double distance);

// Diffuse terms chi = sqrt(sigma2 / (kappa + 1)) * alpha * l for one draw,
// l unit-variance complex Gaussian. The LoS scale is sqrt(kappa / (kappa + 1)).
SmallScaleTerms sample_rician_links(const FadingConfig& cfg, std::size_t draw,
                                    const RisGeometry& geom, const LinkGeometry& link,
                                    const OfdmGrid& grid, std::size_t tx_index = 0,
                                    std::size_t ue_index = 0);

struct FadingStats {
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> rates;
};

// Rate of frozen per-element phases over `cfg.draws` Rician realizations.
// los_power is used when cfg.rewaterfill is false.
FadingStats evaluate_under_fading(const std::vector<double>& phases, double amplitude,
                                  const FadingConfig& cfg, const RisGeometry& geom,
                                  const LinkGeometry& link, const OfdmGrid& grid,
                                  const OptimizeOptions& opts = {},
                                  const std::vector<double>* los_power = nullptr);

FadingStats evaluate_under_fading(const Assignment& assignment, const ProfileCodebook& cb,
                                  const FadingConfig& cfg, const RisGeometry& geom,
                                  const LinkGeometry& link, const OfdmGrid& grid,
                                  const OptimizeOptions& opts = {});

}  // namespace risofdm
