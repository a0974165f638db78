#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace risofdm {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every output
// block is a pure function of (key, counter), so streams can be addressed
// directly by index without shared state.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// Indexed stream of circularly-symmetric complex Gaussians. The sample for
// (draw, link, element, carrier) depends only on the seed and those indices.
class GaussianField {
 public:
  explicit GaussianField(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  // Unit-variance sample: E|z|^2 = 1.
  std::complex<double> sample(std::uint32_t draw, std::uint32_t link, std::uint32_t element,
                              std::uint32_t carrier) const {
    const auto out = Philox4x32::block({carrier, element, link, draw}, key_);
    const double u1 = to_unit((std::uint64_t{out[0]} << 32) | out[1]);
    const double u2 = to_unit((std::uint64_t{out[2]} << 32) | out[3]);
    const double radius = std::sqrt(-std::log(u1));  // each component has variance 1/2
    const double angle = 6.283185307179586 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  // Uniform in (0, 1): 53 random bits, offset by half an ulp so 0 is excluded.
  static double to_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
};

}  // namespace risofdm
