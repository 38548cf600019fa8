// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

namespace hsfsim {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

constexpr double wavelength(double frequency_hz) { return kSpeedOfLight / frequency_hz; }

}  // namespace hsfsim
