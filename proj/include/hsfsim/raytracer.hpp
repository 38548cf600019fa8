// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "hsfsim/channel.hpp"
#include "hsfsim/materials.hpp"
#include "hsfsim/scene.hpp"

namespace hsfsim {

struct TraceBudget {
  int max_order = 4;
  /// Components weaker than this (20 log10 |gain|) are dropped.
  double min_path_gain_db = -std::numeric_limits<double>::infinity();
};

struct TracedPath {
  GeometricPath geometry;
  std::vector<std::size_t> surfaces;  // indices into Scene::surfaces, one per bounce
};

/// Every unoccluded specular path with 0..max_order bounces off the scene
/// surfaces (no surface twice in a row). Ordered by bounce count, then by
/// the sequence of surface ids.
std::vector<TracedPath> enumerate_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                        const TraceBudget& budget = {});

/// Free-space spreading over the whole path times the Fresnel factor of
/// each bounce. nullopt polarization selects the unpolarized factor.
/// Throws DomainError if the path touches an HsfWall surface.
PathComponent plain_path_component(const TracedPath& path, const Scene& scene, double frequency_hz,
                                   std::optional<Polarization> pol = std::nullopt);

/// Response of the uncoated room (HSF walls reverted to their material).
ChannelResponse plain_response(const Scene& scene, const Vec3& tx, const Vec3& rx, const TraceBudget& budget = {},
                               std::optional<Polarization> pol = std::nullopt);

double plain_received_power(const Scene& scene, const Vec3& tx, const Vec3& rx, double tx_power_dbmw,
                            double frequency_hz, const TraceBudget& budget = {},
                            Aggregation mode = Aggregation::Noncoherent,
                            std::optional<Polarization> pol = std::nullopt);

}  // namespace hsfsim
