// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsfsim/geom.hpp"

namespace hsfsim {

// ---------------------------------------------------------------------------
//  Coefficient tables
// ---------------------------------------------------------------------------

struct AbsorptionRow {
  double theta_i_deg;
  double alpha_db;  // specular leakage of a tile tuned to absorb

  friend bool operator==(const AbsorptionRow&, const AbsorptionRow&) = default;
};

struct ReflectionRow {
  double theta_i_deg;
  double theta_r_deg;
  int cells;  // N_m of the characterized supercell
  double alpha_db;
  double reflected_power_pct;

  friend bool operator==(const ReflectionRow&, const ReflectionRow&) = default;
};

/// Measured tile coefficients: absorption leakage vs. incidence angle and
/// anomalous-reflection efficiency vs. (incidence, reflection) angle pair.
///
/// Lookups interpolate linearly in dB. For reflection, rows are grouped by
/// incidence angle; a query between two groups blends them linearly when
/// both cover the reflection angle, otherwise it falls back to the nearest
/// group that does. Nothing is extrapolated.
class CoeffTable {
 public:
  /// Throws TableFormatError when a structural invariant is violated.
  CoeffTable(std::vector<AbsorptionRow> absorption, std::vector<ReflectionRow> reflection);

  /// The characterized 60 GHz tile shipped with the library.
  static const CoeffTable& builtin();

  const std::vector<AbsorptionRow>& absorption_rows() const { return absorption_; }
  const std::vector<ReflectionRow>& reflection_rows() const { return reflection_; }

  /// Tabulated incidence range of the absorption data, radians.
  std::pair<double, double> absorption_range() const;
  /// Tabulated incidence range of the reflection data, radians.
  std::pair<double, double> reflection_incidence_range() const;
  /// Reflection angles usable at `theta_i` (radians), or nullopt outside the incidence range.
  std::optional<std::pair<double, double>> reflection_range(double theta_i) const;

  /// Rows whose percent column disagrees with 10^(dB/10) by more than 2
  /// points. Reported, never enforced; the dB column is authoritative.
  std::vector<std::string> audit() const;

  /// Degree-valued lookups backing absorption_coeff / reflection_coeff.
  double absorption_db_deg(double theta_i_deg) const;
  double reflection_db_deg(double theta_i_deg, double theta_r_deg) const;

  friend bool operator==(const CoeffTable& l, const CoeffTable& r) {
    return l.absorption_ == r.absorption_ && l.reflection_ == r.reflection_;
  }

 private:
  struct Group {
    double theta_i_deg;
    std::vector<std::pair<double, double>> points;  // (theta_r_deg, alpha_db), sorted
  };

  static std::optional<double> group_value(const Group& g, double theta_r_deg);

  std::vector<AbsorptionRow> absorption_;
  std::vector<ReflectionRow> reflection_;
  std::vector<Group> groups_;
};

/// Leakage of an absorbing tile at incidence `theta_i` (rad), in dB.
/// Throws TableRangeError outside the tabulated range.
double absorption_coeff(const CoeffTable& table, double theta_i);

/// Efficiency of steering `theta_i` -> `theta_r` (rad), in dB.
/// Throws TableRangeError outside the tabulated coverage.
double reflection_coeff(const CoeffTable& table, double theta_i, double theta_r);

/// How channel assembly maps arbitrary path angles onto the table.
enum class CoeffLookup {
  Strict,  // use the angles as-is, TableRangeError outside coverage
  // Swap to (smaller, larger) by reciprocity of the grating relation, then
  // clamp into the tabulated coverage.
  ReciprocalClamp,
};

double lookup_reflection_db(const CoeffTable& table, double theta_in, double theta_out, CoeffLookup policy);
double lookup_absorption_db(const CoeffTable& table, double theta_i, CoeffLookup policy);

/// Parses the two CSV assets (see data/). Throws TableFormatError.
CoeffTable parse_coeff_tables(const std::string& absorption_csv, const std::string& reflection_csv);
/// Loads hsf_absorption.csv and hsf_reflection.csv from `dir`.
CoeffTable load_coeff_tables(const std::filesystem::path& dir);
std::string absorption_csv(const CoeffTable& table);
std::string reflection_csv(const CoeffTable& table);

// ---------------------------------------------------------------------------
//  Tiles
// ---------------------------------------------------------------------------

enum class TileMode { Reflect, Absorb, Inert };

/// Function a single tile is programmed for. Reflect steers toward
/// (steer_theta, steer_azimuth) in the tile frame: theta from the normal,
/// azimuth from the panel's edge_u toward edge_v. Inert tiles contribute
/// nothing to the response.
struct TileConfig {
  TileMode mode = TileMode::Absorb;
  double steer_theta = 0.0;    // rad, [0, pi/2)
  double steer_azimuth = 0.0;  // rad
  bool collimate = false;

  static TileConfig reflect(double theta, double azimuth, bool collimate = false);
  static TileConfig absorb() { return {}; }
  static TileConfig inert() { return {TileMode::Inert}; }

  friend bool operator==(const TileConfig&, const TileConfig&) = default;
};

/// Throws DomainError when a Reflect target is outside [0, pi/2).
void validate(const TileConfig& config);

struct Tile {
  std::string id;
  RectPanel panel;
  std::string host;  // id of the wall the tile tessellates
  TileConfig config;

  friend bool operator==(const Tile&, const Tile&) = default;
};

/// World-space unit direction of a Reflect tile's target.
Vec3 steering_target(const TileConfig& config, const RectPanel& panel);

/// Reflect configuration aiming `panel` along the world direction `outgoing`.
TileConfig aim_at(const RectPanel& panel, const Vec3& outgoing, bool collimate);

// ---------------------------------------------------------------------------
//  Supercell design
// ---------------------------------------------------------------------------

enum class RoundingPolicy { Floor, Round, Ceil };

struct PhaseSample {
  double x;      // m
  double phase;  // rad
};

struct SupercellDesign {
  int cells = 0;  // N_m
  int order = 1;  // diffraction order m
  double pitch = 0.0;
  double wavelength = 0.0;
  double theta_i = 0.0;
  double theta_r_target = 0.0;
  double theta_r_achieved = 0.0;
  double phase_slope = 0.0;  // rad/m
  std::vector<PhaseSample> phase_profile;
};

/// Supercell size steering `theta_i` toward `theta_r` on diffraction order
/// `order`:
///
///   sin(theta_r) - sin(theta_i) = order * wavelength / (cells * pitch)
///
/// `cells` is rounded per `policy` and clamped to >= 2; the returned design
/// carries the angle the integer supercell actually produces.
/// Throws SupercellError (Specular, OrderSign, Evanescent) or DomainError.
SupercellDesign design_supercell(double theta_i, double theta_r, int order, double wavelength,
                                 double pitch, RoundingPolicy policy = RoundingPolicy::Round);

/// asin(sin(theta_i) + order * wavelength / (cells * pitch)).
/// Throws SupercellError::Evanescent when the argument exceeds 1 in magnitude.
double achieved_angle(int cells, double theta_i, int order, double wavelength, double pitch);

/// Result of steering a 3D incident wave with a phase-gradient supercell.
struct Steering {
  Vec3 direction;  // achieved outgoing unit vector
  int cells = 0;   // 0: target is the specular direction, no gradient needed
  double error = 0.0;  // rad between achieved and target directions
};

/// Generalized (3D) form of the supercell relation: the gradient is laid
/// along the tangential momentum kick between the incident wave and the
/// target, so the in-plane case reduces to design_supercell with m = +-1.
/// `incoming` is the propagation direction of the incident wave, `target`
/// the desired outgoing direction; both need not be unit length.
/// nullopt when the quantized supercell only supports an evanescent order.
std::optional<Steering> steer(const Vec3& incoming, const Vec3& target, const RectPanel& panel,
                              double wavelength, double pitch, RoundingPolicy policy = RoundingPolicy::Round);

}  // namespace hsfsim
