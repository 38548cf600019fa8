// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

std::complex<double> carrier_phase(double frequency_hz, double delay) {
  return std::polar(1.0, -2.0 * kPi * frequency_hz * delay);
}

}  // namespace

PathComponent make_component(PathKind kind, GeometricPath path, std::complex<double> amplitude,
                             double frequency_hz, std::vector<std::string> via) {
  PathComponent c;
  c.kind = kind;
  c.delay = path_delay(path.total_length);
  c.gain = amplitude * carrier_phase(frequency_hz, c.delay);
  const auto& v = path.vertices;
  const Vec3 arrival = normalized(v[v.size() - 2] - v.back());
  c.aoa_elevation = std::asin(std::clamp(arrival.z, -1.0, 1.0));
  c.aoa_azimuth = std::atan2(arrival.y, arrival.x);
  c.bounce_count = static_cast<int>(path.bounce_count());
  c.via = std::move(via);
  c.path = std::move(path);
  return c;
}

namespace {

double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string_view to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Los: return "los";
    case PathKind::HsfReflected: return "hsf_reflected";
    case PathKind::HsfLeakage: return "hsf_leakage";
    case PathKind::PlainReflected: return "plain_reflected";
  }
  return "?";
}

void ChannelResponse::sort() {
  std::stable_sort(components.begin(), components.end(), [](const PathComponent& a, const PathComponent& b) {
    if (a.delay != b.delay) return a.delay < b.delay;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.via < b.via;
  });
}

void ChannelResponse::validate() const {
  std::set<std::pair<PathKind, std::vector<std::string>>> seen;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& c = components[k];
    if (k > 0 && c.delay < components[k - 1].delay) {
      throw InvariantError("channel response not sorted by delay");
    }
    if (!seen.emplace(c.kind, c.via).second) {
      throw InvariantError("duplicate path component via the same ids");
    }
  }
}

double spreading_gain(double frequency_hz, double distance_m) {
  if (!(frequency_hz > 0.0) || !(distance_m > 0.0)) {
    throw DomainError("spreading gain needs positive frequency and distance");
  }
  return kSpeedOfLight / (4.0 * kPi * frequency_hz * distance_m);
}

double path_delay(double distance_m) {
  if (!(distance_m >= 0.0)) throw DomainError("path length must be non-negative");
  return distance_m / kSpeedOfLight;
}

std::optional<PathComponent> los_component(const Vec3& tx, const Vec3& rx, double frequency_hz,
                                           std::span<const RectPanel> blockers) {
  if (tx == rx) throw DomainError("transmitter and receiver coincide");
  if (is_occluded(tx, rx, blockers)) return std::nullopt;
  auto path = GeometricPath::through({tx, rx}, {});
  const double amp = spreading_gain(frequency_hz, path.total_length);
  return make_component(PathKind::Los, std::move(path), amp, frequency_hz, {});
}

PathComponent hsf_reflect_component(const GeometricPath& path, std::span<const Tile* const> tiles,
                                    const CoeffTable& table, double frequency_hz, const HsfModel& model) {
  if (path.bounce_count() == 0 || tiles.size() != path.bounce_count()) {
    throw DomainError("reflected path needs exactly one tile per bounce");
  }
  const auto& v = path.vertices;
  double coeff_db = 0.0;
  std::vector<std::string> via;
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    const Tile& tile = *tiles[k];
    if (tile.config.mode != TileMode::Reflect) {
      throw DomainError("tile " + tile.id + " is not configured to reflect");
    }
    via.push_back(tile.id);
    if (!model.ideal) {
      const double theta_in = incidence_angle(v[k + 1] - v[k], tile.panel);
      const double theta_out = incidence_angle(v[k + 2] - v[k + 1], tile.panel);
      coeff_db += lookup_reflection_db(table, theta_in, theta_out, model.lookup);
    }
  }

  const auto& seg = path.segment_lengths;
  double spread_len = path.total_length;
  if (tiles.front()->config.collimate) {
    spread_len = model.spreading_after_collimation ? seg.front() + seg.back() : seg.front();
  }
  const double amp = spreading_gain(frequency_hz, spread_len) * db_to_amplitude(coeff_db);
  return make_component(PathKind::HsfReflected, path, amp, frequency_hz, std::move(via));
}

std::optional<PathComponent> hsf_leakage_component(const GeometricPath& path, const Tile& tile,
                                                   const CoeffTable& table, double frequency_hz,
                                                   const HsfModel& model) {
  if (path.bounce_count() != 1) throw DomainError("leakage path must have a single bounce");
  if (tile.config.mode != TileMode::Absorb) {
    throw DomainError("tile " + tile.id + " is not configured to absorb");
  }
  if (model.perfect_absorber) return std::nullopt;
  const double theta_i = incidence_angle(path.vertices[1] - path.vertices[0], tile.panel);
  const double coeff_db = model.ideal ? -std::numeric_limits<double>::infinity()
                                      : lookup_absorption_db(table, theta_i, model.lookup);
  if (std::isinf(coeff_db)) return std::nullopt;
  const double amp = spreading_gain(frequency_hz, path.total_length) * db_to_amplitude(coeff_db);
  return make_component(PathKind::HsfLeakage, path, amp, frequency_hz, {tile.id});
}

double received_power(const ChannelResponse& cr, double tx_power_dbmw, Aggregation mode) {
  double linear = 0.0;
  if (mode == Aggregation::Coherent) {
    std::complex<double> sum;
    for (const auto& c : cr.components) sum += c.gain;
    linear = std::norm(sum);
  } else {
    for (const auto& c : cr.components) linear += std::norm(c.gain);
  }
  if (!(linear > 0.0)) return -std::numeric_limits<double>::infinity();
  return tx_power_dbmw + 10.0 * std::log10(linear);
}

double gain_percent(double p_hsf_dbmw, double p_plain_dbmw) {
  if (p_plain_dbmw == 0.0) throw DomainError("gain percent undefined for a 0 dBmW baseline");
  return 100.0 * (p_hsf_dbmw - p_plain_dbmw) / p_plain_dbmw;
}

double gain_percent_linear(double p_hsf_dbmw, double p_plain_dbmw) {
  return 100.0 * (std::pow(10.0, (p_hsf_dbmw - p_plain_dbmw) / 10.0) - 1.0);
}

std::vector<PdpBin> power_delay_profile(const ChannelResponse& cr, double bin_s) {
  if (!(bin_s > 0.0)) throw DomainError("delay bin must be positive");
  std::map<long, double> bins;
  for (const auto& c : cr.components) {
    // Nudge so delays that are exact multiples of the bin land on their own index.
    const long idx = static_cast<long>(std::floor(c.delay / bin_s + 1e-9));
    bins[idx] += std::norm(c.gain);
  }
  std::vector<PdpBin> out;
  out.reserve(bins.size());
  for (const auto& [idx, p] : bins) {
    out.push_back({idx, idx * bin_s, p, 10.0 * std::log10(p)});
  }
  return out;
}

std::string cir_csv(const ChannelResponse& cr) {
  std::ostringstream os;
  os << "path_id,kind,delay_ns,gain_db,phase_rad,aoa_el_deg,aoa_az_deg,bounce_count,via_ids\n";
  for (std::size_t k = 0; k < cr.components.size(); ++k) {
    const auto& c = cr.components[k];
    std::string via;
    for (std::size_t j = 0; j < c.via.size(); ++j) via += (j ? ";" : "") + c.via[j];
    os << k << ',' << to_string(c.kind) << ',' << fmt("%.6f", c.delay * 1e9) << ','
       << fmt("%.4f", 20.0 * std::log10(std::abs(c.gain))) << ',' << fmt("%.6f", std::arg(c.gain)) << ','
       << fmt("%.3f", rad2deg(c.aoa_elevation)) << ',' << fmt("%.3f", rad2deg(c.aoa_azimuth)) << ','
       << c.bounce_count << ',' << via << '\n';
  }
  return os.str();
}

}  // namespace hsfsim
