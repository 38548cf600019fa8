// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "hsfsim/cir.hpp"
#include "hsfsim/scene.hpp"

namespace hsfsim {

/// 10 m x 15 m x 4 m concrete room split by a 12 m long, 0.5 m thick
/// middle wall (x in [4.75, 5.25], y in [3, 15]). The lower 3 m of all four
/// perimeter walls and both middle-wall faces carry 1 m HSF tiles (222 in
/// total); the top 1 m bands, the wall end, floor and ceiling are plain.
/// Tx (7.6, 11.4, 2) at 100 dBmW and 60 GHz; four NLOS receivers at x = 1.15.
Scene build_paper_scene();

/// Reference link of the built scene: relay chain and reported powers.
struct ReferenceLink {
  std::size_t rx_index = 0;
  std::vector<std::string> chain;  // tile ids, tx side first
  double plain_dbmw = 0.0;
  double hsf_dbmw = 0.0;
  double printed_gain_pct = 0.0;
};

const std::vector<ReferenceLink>& reference_links();

/// Sets the chain tiles to Reflect, each aimed at the next tile center (the
/// last one at rx). Throws SceneError::UnknownTile for an unknown id and
/// DomainError when a hop points behind a tile.
void configure_chain(Scene& scene, const Vec3& rx, std::span<const std::string> chain, bool collimate);

struct TileAssignment {
  std::size_t rx_index = 0;
  std::vector<std::string> chain;
  std::vector<TileConfig> configs;  // one per chain tile
  double predicted_power = 0.0;     // dBmW, noncoherent
};

struct SelectOptions {
  CirOptions cir;
  bool collimate = true;
  int max_chain = 2;  // 1 or 2
};

/// Exhaustive search over single tiles and ordered tile pairs. Every other
/// tile is reset to the scene default; each candidate is configured with
/// configure_chain and scored by noncoherent received power of the
/// resulting response. Ties go to the lexicographically smallest chain.
/// Throws DomainError when no chain reaches the receiver.
TileAssignment select_tiles(const Scene& scene, std::size_t rx_index, const CoeffTable& table,
                            const SelectOptions& options = {});

/// Copy of `scene` with every tile at the default config except the chain.
Scene apply_assignment(const Scene& scene, const TileAssignment& assignment);

}  // namespace hsfsim
