#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace risofdm {

using Vec3 = std::array<double, 3>;

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);
double norm(const Vec3& v);

// Unit vector with azimuth theta (from +x towards +y) and polar angle
// theta_p (from +z).
Vec3 direction(double theta, double theta_p);

// Planar RIS in the y-z plane. Elements are numbered row-major along y.
struct RisGeometry {
  Vec3 center{100.0, 0.0, 3.0};
  std::size_t n_y = 200;
  std::size_t n_z = 1;
  double spacing = 0.05995849160000000;  // half a wavelength at 2.5 GHz
  double amplitude = 0.85;

  std::size_t size() const { return n_y * n_z; }
  void validate() const;

  // Signed grid indices (n_y, n_z) of element j (0-based).
  double index_y(std::size_t j) const;
  double index_z(std::size_t j) const;
  Vec3 element_position(std::size_t j) const;
};

struct AntennaGains {
  double g_t = 1.0;
  double g_r = 1.0;
};

// Tx-RIS-UE link seen from the RIS center.
//
// theta1/theta1p are the azimuth/polar angles of the propagation direction
// from the transmitter to the RIS, theta2/theta2p those of the direction from
// the RIS to the UE. Azimuth is measured from +x (so the RIS normal facing the
// default transmitter is azimuth pi) and folded into [0, 2*pi). With this
// choice a UE in front of the RIS has theta2 in [pi/2, 3*pi/2] and the mirror
// direction of an incoming wave with azimuth theta1 is theta2 = pi - theta1.
struct LinkGeometry {
  Vec3 tx_pos{};
  Vec3 ue_pos{};
  double theta1 = 0.0;
  double theta1p = 0.0;
  double theta2 = 0.0;
  double theta2p = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double dd = 0.0;
  double g_t = 1.0;
  double g_r = 1.0;

  double cascade_distance() const { return d1 + d2; }
};

LinkGeometry make_link(const Vec3& tx, const Vec3& ris_center, const Vec3& ue,
                       const AntennaGains& gains);

// UE on the circle of the given radius around the RIS center.
Vec3 ue_on_circle(const Vec3& ris_center, double radius, double theta2, double theta2p);

// Transmitter at distance d1 whose wave reaches the RIS with direction
// (theta1, theta1p).
Vec3 tx_for_arrival(const Vec3& ris_center, double d1, double theta1, double theta1p);

struct ElementOffset {
  double dy = 0.0;
  double dz = 0.0;
};

// Per-element path-length offsets of the planar-wave model, in metres.
std::vector<ElementOffset> element_offsets(const RisGeometry& geom, double theta1, double theta1p,
                                           double theta2, double theta2p);
std::vector<ElementOffset> element_offsets(const RisGeometry& geom, const LinkGeometry& link);

// Per-element one-hop offsets: the Tx side uses (theta1, theta1p) only and
// the UE side (theta2, theta2p) only. Their sum is element_offsets.
std::vector<double> incoming_offsets(const RisGeometry& geom, double theta1, double theta1p);
std::vector<double> outgoing_offsets(const RisGeometry& geom, double theta2, double theta2p);

// Grid of angles lo, lo + step, ... not exceeding hi (with a small slack so
// that hi itself is included when it lies on the grid).
std::vector<double> angle_grid(double lo, double hi, double step);

}  // namespace risofdm
