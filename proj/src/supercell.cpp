// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"
#include "hsfsim/hsf.hpp"

namespace hsfsim {

namespace {

constexpr double kMaxCells = 1e9;

int apply_policy(double exact, RoundingPolicy policy) {
  double n = exact;
  switch (policy) {
    case RoundingPolicy::Floor: n = std::floor(exact); break;
    case RoundingPolicy::Round: n = std::round(exact); break;
    case RoundingPolicy::Ceil: n = std::ceil(exact); break;
  }
  return std::max(2, static_cast<int>(n));
}

Vec3 tangential(const Vec3& v, const Vec3& n) { return v - dot(v, n) * n; }

}  // namespace

TileConfig TileConfig::reflect(double theta, double azimuth, bool collimate) {
  TileConfig c{TileMode::Reflect, theta, azimuth, collimate};
  validate(c);
  return c;
}

void validate(const TileConfig& config) {
  if (config.mode == TileMode::Reflect &&
      !(config.steer_theta >= 0.0 && config.steer_theta < kPi / 2 && std::isfinite(config.steer_azimuth))) {
    throw DomainError("reflect target must satisfy 0 <= theta_r < 90 deg");
  }
}

Vec3 steering_target(const TileConfig& config, const RectPanel& panel) {
  const Vec3 u = normalized(panel.edge_u());
  const Vec3 v = normalized(panel.edge_v());
  const double st = std::sin(config.steer_theta);
  return st * std::cos(config.steer_azimuth) * u + st * std::sin(config.steer_azimuth) * v +
         std::cos(config.steer_theta) * panel.normal();
}

TileConfig aim_at(const RectPanel& panel, const Vec3& outgoing, bool collimate) {
  const Vec3 d = normalized(outgoing);
  const double c = dot(d, panel.normal());
  if (!(c > 0.0)) {
    throw DomainError("cannot aim a tile behind its reflecting side");
  }
  const Vec3 u = normalized(panel.edge_u());
  const Vec3 v = normalized(panel.edge_v());
  return TileConfig::reflect(std::acos(std::min(1.0, c)), std::atan2(dot(d, v), dot(d, u)), collimate);
}

double achieved_angle(int cells, double theta_i, int order, double wavelength, double pitch) {
  if (cells < 1) throw DomainError("supercell needs at least one unit cell");
  if (!(wavelength > 0.0) || !(pitch > 0.0)) throw DomainError("wavelength and pitch must be positive");
  const double s = std::sin(theta_i) + order * wavelength / (cells * pitch);
  if (std::abs(s) > 1.0 + 1e-12) {
    throw SupercellError(SupercellError::Kind::Evanescent,
                         "diffraction order is evanescent (sin theta_r = " + std::to_string(s) + ")");
  }
  return std::asin(std::clamp(s, -1.0, 1.0));
}

SupercellDesign design_supercell(double theta_i, double theta_r, int order, double wavelength, double pitch,
                                 RoundingPolicy policy) {
  if (order == 0) throw DomainError("diffraction order must be nonzero");
  if (!(wavelength > 0.0) || !(pitch > 0.0)) throw DomainError("wavelength and pitch must be positive");
  const double ds = std::sin(theta_r) - std::sin(theta_i);
  if (std::abs(ds) < 1e-12) {
    throw SupercellError(SupercellError::Kind::Specular, "specular request: no supercell needed");
  }
  const double exact = order * wavelength / (pitch * ds);
  if (exact < 0.0) {
    throw SupercellError(SupercellError::Kind::OrderSign,
                         "steering direction requires a diffraction order of the opposite sign");
  }
  if (exact > kMaxCells) throw DomainError("steering too close to specular for a finite supercell");

  SupercellDesign d;
  d.cells = apply_policy(exact, policy);
  d.order = order;
  d.pitch = pitch;
  d.wavelength = wavelength;
  d.theta_i = theta_i;
  d.theta_r_target = theta_r;
  d.theta_r_achieved = achieved_angle(d.cells, theta_i, order, wavelength, pitch);
  d.phase_slope = order * 2.0 * kPi / (d.cells * pitch);
  d.phase_profile.reserve(static_cast<std::size_t>(d.cells));
  for (int k = 0; k < d.cells; ++k) {
    const double x = k * pitch;
    d.phase_profile.push_back({x, d.phase_slope * x});
  }
  return d;
}

std::optional<Steering> steer(const Vec3& incoming, const Vec3& target, const RectPanel& panel, double wavelength,
                              double pitch, RoundingPolicy policy) {
  const Vec3& n = panel.normal();
  const Vec3 kin = normalized(incoming);
  const Vec3 kt = normalized(target);
  if (!(dot(kin, n) < 0.0) || !(dot(kt, n) > 0.0)) {
    return std::nullopt;
  }
  const Vec3 tin = tangential(kin, n);
  const Vec3 kick = tangential(kt, n) - tin;
  const double kick_len = norm(kick);

  Steering s;
  Vec3 tout = tin;
  if (kick_len > 1e-9) {
    s.cells = apply_policy(wavelength / (pitch * kick_len), policy);
    tout = tin + (wavelength / (s.cells * pitch)) * (kick / kick_len);
  }
  const double t2 = dot(tout, tout);
  if (t2 > 1.0) {
    return std::nullopt;
  }
  s.direction = tout + std::sqrt(1.0 - t2) * n;
  s.error = std::acos(std::clamp(dot(s.direction, kt), -1.0, 1.0));
  return s;
}

}  // namespace hsfsim
