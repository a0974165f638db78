#include "risofdm/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "risofdm/units.hpp"

namespace risofdm {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 direction(double theta, double theta_p) {
  const double s = std::sin(theta_p);
  return {std::cos(theta) * s, std::sin(theta) * s, std::cos(theta_p)};
}

void RisGeometry::validate() const {
  if (n_y < 1 || n_z < 1) throw ValidationError("RisGeometry: element counts must be positive");
  if (!(spacing > 0.0)) throw ValidationError("RisGeometry: spacing must be positive");
  if (!(amplitude > 0.0) || amplitude > 1.0) {
    throw ValidationError("RisGeometry: amplitude must lie in (0, 1]");
  }
}

double RisGeometry::index_y(std::size_t j) const {
  return static_cast<double>(j % n_y) + 1.0 - static_cast<double>(n_y) / 2.0;
}

double RisGeometry::index_z(std::size_t j) const {
  return static_cast<double>(j / n_y) + 1.0 - static_cast<double>(n_z) / 2.0;
}

Vec3 RisGeometry::element_position(std::size_t j) const {
  return {center[0], center[1] + spacing * index_y(j), center[2] + spacing * index_z(j)};
}

namespace {

constexpr double kHorizontalEps = 1e-12;

double azimuth_of(const Vec3& v, double fallback) {
  if (std::hypot(v[0], v[1]) <= kHorizontalEps * norm(v)) return fallback;
  return wrap_to_2pi(std::atan2(v[1], v[0]));
}

double polar_of(const Vec3& v) { return std::acos(std::clamp(v[2] / norm(v), -1.0, 1.0)); }

}  // namespace

LinkGeometry make_link(const Vec3& tx, const Vec3& ris_center, const Vec3& ue,
                       const AntennaGains& gains) {
  LinkGeometry link;
  link.tx_pos = tx;
  link.ue_pos = ue;
  const Vec3 incoming = ris_center - tx;
  const Vec3 outgoing = ue - ris_center;
  link.d1 = norm(incoming);
  link.d2 = norm(outgoing);
  link.dd = norm(ue - tx);
  if (!(link.d1 > 0.0) || !(link.d2 > 0.0) || !(link.dd > 0.0)) {
    throw ValidationError("make_link: Tx, RIS and UE positions must be distinct");
  }
  link.theta1 = azimuth_of(incoming, 0.0);
  link.theta1p = polar_of(incoming);
  link.theta2 = azimuth_of(outgoing, kPi);
  link.theta2p = polar_of(outgoing);
  constexpr double tol = 1e-12;
  if (link.theta2 < kPi / 2.0 - tol || link.theta2 > 1.5 * kPi + tol) {
    throw ValidationError("make_link: UE lies behind the RIS (theta2 outside [pi/2, 3pi/2])");
  }
  link.g_t = gains.g_t;
  link.g_r = gains.g_r;
  return link;
}

Vec3 ue_on_circle(const Vec3& ris_center, double radius, double theta2, double theta2p) {
  return ris_center + radius * direction(theta2, theta2p);
}

Vec3 tx_for_arrival(const Vec3& ris_center, double d1, double theta1, double theta1p) {
  return ris_center - d1 * direction(theta1, theta1p);
}

std::vector<double> incoming_offsets(const RisGeometry& geom, double theta1, double theta1p) {
  const double cy = std::cos(theta1) * std::sin(theta1p);
  const double cz = std::cos(theta1p);
  std::vector<double> out(geom.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = geom.spacing * (geom.index_y(j) * cy + geom.index_z(j) * cz);
  }
  return out;
}

std::vector<double> outgoing_offsets(const RisGeometry& geom, double theta2, double theta2p) {
  return incoming_offsets(geom, theta2, theta2p);
}

std::vector<ElementOffset> element_offsets(const RisGeometry& geom, double theta1, double theta1p,
                                           double theta2, double theta2p) {
  const double cy = std::cos(theta1) * std::sin(theta1p) + std::cos(theta2) * std::sin(theta2p);
  const double cz = std::cos(theta1p) + std::cos(theta2p);
  std::vector<ElementOffset> out(geom.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j].dy = geom.index_y(j) * geom.spacing * cy;
    out[j].dz = geom.index_z(j) * geom.spacing * cz;
  }
  return out;
}

std::vector<ElementOffset> element_offsets(const RisGeometry& geom, const LinkGeometry& link) {
  return element_offsets(geom, link.theta1, link.theta1p, link.theta2, link.theta2p);
}

std::vector<double> angle_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw ValidationError("angle_grid: step must be positive");
  if (hi < lo) throw ValidationError("angle_grid: empty range");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
  return grid;
}

}  // namespace risofdm
