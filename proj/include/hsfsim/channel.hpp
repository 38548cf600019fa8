// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsfsim/geom.hpp"
#include "hsfsim/hsf.hpp"

namespace hsfsim {

enum class PathKind { Los, HsfReflected, HsfLeakage, PlainReflected };

std::string_view to_string(PathKind kind);

/// One multipath arrival.
struct PathComponent {
  PathKind kind = PathKind::Los;
  std::complex<double> gain;  // amplitude, includes exp(-j 2 pi f_c tau)
  double delay = 0.0;         // s
  double aoa_elevation = 0.0;  // rad above the horizontal plane, toward the last vertex
  double aoa_azimuth = 0.0;    // rad, atan2(y, x) of the same direction
  int bounce_count = 0;
  std::vector<std::string> via;  // tile or surface ids, in bounce order
  GeometricPath path;
};

/// Discrete impulse response of one Tx-Rx link at carrier `frequency`.
struct ChannelResponse {
  std::vector<PathComponent> components;
  double frequency = 0.0;
  std::string tx_id = "tx";
  std::string rx_id = "rx";

  /// Orders components by delay (ties by kind, then ids).
  void sort();
  /// Throws InvariantError when unsorted or holding duplicate (kind, via) entries.
  void validate() const;
};

enum class Aggregation { Coherent, Noncoherent };

/// Tuning of the metasurface terms of the response.
struct HsfModel {
  bool ideal = false;             // every alpha_HSF forced to 0 dB
  bool perfect_absorber = false;  // leakage omitted
  // With collimation, spreading covers the first impact only; when set, the
  // final tile -> rx segment spreads as well.
  bool spreading_after_collimation = false;
  CoeffLookup lookup = CoeffLookup::ReciprocalClamp;
};

/// Free-space amplitude c / (4 pi f_c d). Throws DomainError unless both are positive.
double spreading_gain(double frequency_hz, double distance_m);

/// d / c. Throws DomainError for negative distance.
double path_delay(double distance_m);

/// Component along `path` with complex `amplitude` (spreading and surface
/// factors); adds the carrier phase, delay and arrival angles.
PathComponent make_component(PathKind kind, GeometricPath path, std::complex<double> amplitude,
                             double frequency_hz, std::vector<std::string> via);

/// Direct path, or nullopt when any blocker crosses it. Throws DomainError when tx == rx.
std::optional<PathComponent> los_component(const Vec3& tx, const Vec3& rx, double frequency_hz,
                                           std::span<const RectPanel> blockers);

/// Anomalously reflected path through `tiles` (one per bounce of `path`,
/// all in Reflect mode). Throws DomainError for a tile in the wrong mode and
/// TableRangeError when strict lookup leaves the table.
PathComponent hsf_reflect_component(const GeometricPath& path, std::span<const Tile* const> tiles,
                                    const CoeffTable& table, double frequency_hz, const HsfModel& model = {});

/// Specular leakage off a single absorbing tile; nullopt for a perfect absorber.
std::optional<PathComponent> hsf_leakage_component(const GeometricPath& path, const Tile& tile,
                                                   const CoeffTable& table, double frequency_hz,
                                                   const HsfModel& model = {});

/// Received power in dBmW; -infinity for an empty response.
double received_power(const ChannelResponse& cr, double tx_power_dbmw, Aggregation mode);

/// Percent change computed on the dBmW values themselves, matching how the
/// published comparison tables report gains. Throws DomainError for p_plain == 0.
double gain_percent(double p_hsf_dbmw, double p_plain_dbmw);

/// Percent change of linear received power.
double gain_percent_linear(double p_hsf_dbmw, double p_plain_dbmw);

struct PdpBin {
  long index = 0;
  double delay = 0.0;  // start of the bin, s
  double power = 0.0;  // linear, sum of |gain|^2
  double power_db = 0.0;
};

/// Nonempty delay bins in ascending order. Throws DomainError for bin <= 0.
std::vector<PdpBin> power_delay_profile(const ChannelResponse& cr, double bin_s);

/// CSV: path_id,kind,delay_ns,gain_db,phase_rad,aoa_el_deg,aoa_az_deg,bounce_count,via_ids
std::string cir_csv(const ChannelResponse& cr);

}  // namespace hsfsim
