// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsfsim {

/// Building material with a power-law conductivity,
/// sigma(f) = conductivity_coeff * f_GHz ^ conductivity_exponent  [S/m].
struct MaterialSpec {
  std::string name;
  double real_permittivity = 1.0;
  double conductivity_coeff = 0.0;
  double conductivity_exponent = 0.0;

  double conductivity(double frequency_hz) const;

  friend bool operator==(const MaterialSpec&, const MaterialSpec&) = default;
};

/// TE: E-field normal to the plane of incidence. TM: E-field in it.
enum class Polarization { TE, TM };

/// Throws DomainError for non-physical parameters.
void validate(const MaterialSpec& mat);

/// Default material for floor, ceiling and uncoated walls.
MaterialSpec concrete();

/// Built-in material by name (concrete, brick, plasterboard, wood, glass,
/// vacuum); nullopt for unknown names.
std::optional<MaterialSpec> builtin_material(std::string_view name);
std::vector<std::string> builtin_material_names();

/// eps = eps_r - j * 17.98 * sigma / f_GHz. Throws DomainError for f <= 0.
std::complex<double> complex_permittivity(const MaterialSpec& mat, double frequency_hz);

/// Amplitude reflection coefficient of a homogeneous half-space.
std::complex<double> fresnel_reflection(std::complex<double> eps, double theta_i, Polarization pol);

/// Mean of the TE and TM power reflection coefficients.
double fresnel_power_unpolarized(std::complex<double> eps, double theta_i);

/// Reflection factor used by the ray tracer: the polarized coefficient, or
/// for nullopt an unpolarized amplitude sqrt(mean power) carrying the TE phase.
std::complex<double> reflection_factor(std::complex<double> eps, double theta_i,
                                       std::optional<Polarization> pol);

}  // namespace hsfsim
