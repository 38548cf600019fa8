// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hsfsim/channel.hpp"
#include "hsfsim/constants.hpp"
#include "hsfsim/raytracer.hpp"
#include "hsfsim/scene.hpp"

namespace hsfsim {

/// Hsf: LOS plus metasurface terms (steered chains and absorber leakage).
/// Plain: the uncoated room through the image-method tracer.
enum class CirMode { Hsf, Plain };

struct CirOptions {
  CirMode mode = CirMode::Hsf;
  HsfModel hsf;
  // A steered hop reaches its next vertex when that vertex lies within this
  // angle of the achieved reflection direction from the tile center.
  double beam_tolerance = deg2rad(2.0);
  RoundingPolicy rounding = RoundingPolicy::Round;
  double unit_cell_pitch = 1e-3;  // m
  int max_hsf_bounces = 2;
  TraceBudget budget;                     // Plain mode
  std::optional<Polarization> pol;        // Plain mode, nullopt = unpolarized
};

/// Full response of the link tx -> rx, sorted by delay and validated.
ChannelResponse assemble_cir(const Scene& scene, const Vec3& tx, const Vec3& rx, const CoeffTable& table,
                             const CirOptions& options = {});

/// Steered chains tx -> tiles... -> rx through Reflect tiles drawn from
/// `candidates` (at most options.max_hsf_bounces per chain).
std::vector<PathComponent> hsf_reflect_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                             std::span<const Tile* const> candidates, const CoeffTable& table,
                                             const CirOptions& options = {});

/// Specular leakage off one Absorb tile, when it reaches rx unoccluded.
std::optional<PathComponent> tile_leakage(const Scene& scene, const Vec3& tx, const Vec3& rx, const Tile& tile,
                                          const CoeffTable& table, const HsfModel& model = {});

/// True when `to` is on the reflecting side of `tile` and the segment from
/// the tile center is clear of every scene surface.
bool tile_sees(const Scene& scene, const Tile& tile, const Vec3& to);

}  // namespace hsfsim
