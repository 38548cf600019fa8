// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/materials.hpp"

#include <array>
#include <cmath>

#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

// ITU-R P.2040 style parameters: eps_r, c_sigma, d_sigma.
struct BuiltinRow {
  std::string_view name;
  double eps_r;
  double c_sigma;
  double d_sigma;
};

constexpr std::array kBuiltins{
    BuiltinRow{"concrete", 5.24, 0.0462, 0.7822},    BuiltinRow{"brick", 3.91, 0.0238, 0.16},
    BuiltinRow{"plasterboard", 2.73, 0.0085, 0.9395}, BuiltinRow{"wood", 1.99, 0.0047, 1.0718},
    BuiltinRow{"glass", 6.31, 0.0036, 1.3394},       BuiltinRow{"vacuum", 1.0, 0.0, 0.0},
};

}  // namespace

double MaterialSpec::conductivity(double frequency_hz) const {
  return conductivity_coeff * std::pow(frequency_hz * 1e-9, conductivity_exponent);
}

void validate(const MaterialSpec& mat) {
  if (!(mat.real_permittivity >= 1.0)) {
    throw DomainError("material '" + mat.name + "': real permittivity must be >= 1");
  }
  if (!(mat.conductivity_coeff >= 0.0) || !std::isfinite(mat.conductivity_exponent)) {
    throw DomainError("material '" + mat.name + "': conductivity must be non-negative");
  }
}

MaterialSpec concrete() { return *builtin_material("concrete"); }

std::optional<MaterialSpec> builtin_material(std::string_view name) {
  for (const auto& row : kBuiltins) {
    if (row.name == name) {
      return MaterialSpec{std::string(row.name), row.eps_r, row.c_sigma, row.d_sigma};
    }
  }
  return std::nullopt;
}

std::vector<std::string> builtin_material_names() {
  std::vector<std::string> out;
  for (const auto& row : kBuiltins) out.emplace_back(row.name);
  return out;
}

std::complex<double> complex_permittivity(const MaterialSpec& mat, double frequency_hz) {
  if (!(frequency_hz > 0.0)) {
    throw DomainError("frequency must be positive");
  }
  const double f_ghz = frequency_hz * 1e-9;
  return {mat.real_permittivity, -17.98 * mat.conductivity(frequency_hz) / f_ghz};
}

std::complex<double> fresnel_reflection(std::complex<double> eps, double theta_i, Polarization pol) {
  const double c = std::cos(theta_i);
  const double s = std::sin(theta_i);
  const std::complex<double> root = std::sqrt(eps - s * s);
  if (pol == Polarization::TE) {
    return (c - root) / (c + root);
  }
  return (eps * c - root) / (eps * c + root);
}

double fresnel_power_unpolarized(std::complex<double> eps, double theta_i) {
  return 0.5 * (std::norm(fresnel_reflection(eps, theta_i, Polarization::TE)) +
                std::norm(fresnel_reflection(eps, theta_i, Polarization::TM)));
}

std::complex<double> reflection_factor(std::complex<double> eps, double theta_i,
                                       std::optional<Polarization> pol) {
  if (pol) {
    return fresnel_reflection(eps, theta_i, *pol);
  }
  const auto te = fresnel_reflection(eps, theta_i, Polarization::TE);
  return std::polar(std::sqrt(fresnel_power_unpolarized(eps, theta_i)), std::arg(te));
}

}  // namespace hsfsim
