// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsfsim/geom.hpp"
#include "hsfsim/hsf.hpp"
#include "hsfsim/materials.hpp"

namespace hsfsim {

enum class SurfaceRole { PlainWall, Floor, Ceiling, HsfWall };

std::string_view to_string(SurfaceRole role);
std::optional<SurfaceRole> parse_role(std::string_view s);

/// A planar room surface. HsfWall surfaces are tessellated by tiles of
/// `tile_size`; `material` still describes the uncoated wall used by the
/// plain baseline.
struct Surface {
  std::string id;
  RectPanel panel;
  SurfaceRole role = SurfaceRole::PlainWall;
  MaterialSpec material;
  double tile_size = 0.0;  // m, HsfWall only

  friend bool operator==(const Surface&, const Surface&) = default;
};

struct Scene {
  std::vector<Surface> surfaces;
  std::vector<Tile> tiles;
  double frequency = 60e9;  // Hz
  Vec3 tx;
  std::vector<Vec3> rx;
  double tx_power_dbmw = 0.0;
  TileConfig default_tile_config = TileConfig::absorb();

  /// Every surface panel; walls are opaque from both sides.
  std::vector<RectPanel> blockers() const;

  const Tile* find_tile(std::string_view id) const;
  Tile* find_tile(std::string_view id);
  const Surface* find_surface(std::string_view id) const;

  /// Copy with every HSF coating removed: HsfWall surfaces become plain
  /// walls of their own material and the tile list is cleared.
  Scene uncoated() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Tile id: center coordinates rounded to 0.5 m, e.g. "10/3.5/0.5".
std::string tile_id_for(const Vec3& center);

/// Tiles tessellating `surface` on a `surface.tile_size` grid, all set to
/// `config`. Throws SceneError::Tessellation when the wall is not an
/// integer number of tiles along both edges.
std::vector<Tile> tessellate(const Surface& surface, const TileConfig& config);

/// Full structural check of a scene: ids, tessellation, overlaps,
/// antenna placement, tile configurations. Throws SceneError.
void validate(const Scene& scene);

}  // namespace hsfsim
