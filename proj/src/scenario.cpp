// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

constexpr double kLength = 15.0;     // y
constexpr double kWidth = 10.0;      // x
constexpr double kHeight = 4.0;      // z
constexpr double kCoated = 3.0;      // tiled band, from the floor
constexpr double kMidLo = 4.75;      // middle wall x extent
constexpr double kMidHi = 5.25;
constexpr double kMidStart = 15.0 - 12.0;  // middle wall runs y in [3, 15]

Surface plain(std::string id, Vec3 origin, Vec3 u, Vec3 v, SurfaceRole role = SurfaceRole::PlainWall) {
  return {std::move(id), RectPanel(origin, u, v), role, concrete(), 0.0};
}

// Coated lower band plus plain upper band of one vertical wall.
void add_wall(std::vector<Surface>& out, const std::string& id, Vec3 origin, Vec3 u) {
  out.push_back({id, RectPanel(origin, u, {0, 0, kCoated}), SurfaceRole::HsfWall, concrete(), 1.0});
  out.push_back(plain(id + "_upper", origin + Vec3{0, 0, kCoated}, u, {0, 0, kHeight - kCoated}));
}

bool same_vertices(const GeometricPath& a, const GeometricPath& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t k = 0; k < a.vertices.size(); ++k) {
    if (distance(a.vertices[k], b.vertices[k]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

Scene build_paper_scene() {
  Scene s;
  s.frequency = 60e9;
  s.tx_power_dbmw = 100.0;
  s.tx = {7.6, 11.4, 2.0};
  s.rx = {{1.15, 0.6, 1.5}, {1.15, 3.1, 1.5}, {1.15, 5.6, 1.5}, {1.15, 8.1, 1.5}};

  auto& w = s.surfaces;
  w.push_back(plain("floor", {0, 0, 0}, {kWidth, 0, 0}, {0, kLength, 0}, SurfaceRole::Floor));
  w.push_back(plain("ceiling", {0, 0, kHeight}, {0, kLength, 0}, {kWidth, 0, 0}, SurfaceRole::Ceiling));
  add_wall(w, "wall_x0", {0, 0, 0}, {0, kLength, 0});
  add_wall(w, "wall_x10", {kWidth, kLength, 0}, {0, -kLength, 0});
  add_wall(w, "wall_y0", {kWidth, 0, 0}, {-kWidth, 0, 0});
  add_wall(w, "wall_y15", {0, kLength, 0}, {kWidth, 0, 0});
  add_wall(w, "middle_east", {kMidHi, kMidStart, 0}, {0, kLength - kMidStart, 0});
  add_wall(w, "middle_west", {kMidLo, kLength, 0}, {0, -(kLength - kMidStart), 0});
  w.push_back(plain("middle_end", {kMidLo, kMidStart, 0}, {kMidHi - kMidLo, 0, 0}, {0, 0, kHeight}));

  for (const auto& surface : w) {
    if (surface.role != SurfaceRole::HsfWall) continue;
    for (auto& t : tessellate(surface, s.default_tile_config)) s.tiles.push_back(std::move(t));
  }
  if (s.tiles.size() != 222) throw InvariantError("reference scene must hold 222 tiles");
  validate(s);
  return s;
}

const std::vector<ReferenceLink>& reference_links() {
  static const std::vector<ReferenceLink> rows = {
      {0, {"10/3.5/0.5", "4.5/0/0.5"}, 7.23, 16.411, 123.0},
      {1, {"10/7.5/1.5", "3.5/0/0.5"}, 8.24, 20.391, 147.0},
      {2, {"10/5.5/1.5", "4.5/0/1.5"}, 7.78, 17.841, 129.0},
      {3, {"10/7.5/0.5", "5.5/0/0.5"}, 14.91, 15.159, 1.67},
  };
  return rows;
}

void configure_chain(Scene& scene, const Vec3& rx, std::span<const std::string> chain, bool collimate) {
  std::vector<Tile*> tiles;
  for (const auto& id : chain) {
    Tile* t = scene.find_tile(id);
    if (!t) throw SceneError(SceneError::Kind::UnknownTile, id, "no such tile");
    tiles.push_back(t);
  }
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    const Vec3 next = k + 1 < tiles.size() ? tiles[k + 1]->panel.center() : rx;
    tiles[k]->config = aim_at(tiles[k]->panel, next - tiles[k]->panel.center(), collimate);
  }
}

Scene apply_assignment(const Scene& scene, const TileAssignment& assignment) {
  Scene out = scene;
  for (auto& t : out.tiles) t.config = out.default_tile_config;
  for (std::size_t k = 0; k < assignment.chain.size(); ++k) {
    Tile* t = out.find_tile(assignment.chain[k]);
    if (!t) throw SceneError(SceneError::Kind::UnknownTile, assignment.chain[k], "no such tile");
    t->config = assignment.configs.at(k);
  }
  return out;
}

TileAssignment select_tiles(const Scene& scene, std::size_t rx_index, const CoeffTable& table,
                            const SelectOptions& options) {
  if (rx_index >= scene.rx.size()) throw DomainError("receiver index out of range");
  if (options.max_chain < 1 || options.max_chain > 2) throw DomainError("chain length must be 1 or 2");
  CirOptions cir = options.cir;
  cir.mode = CirMode::Hsf;

  Scene base = scene;
  for (auto& t : base.tiles) t.config = base.default_tile_config;
  const Vec3 tx = base.tx;
  const Vec3 rx = base.rx[rx_index];
  const auto blockers = base.blockers();
  const std::size_t n = base.tiles.size();

  // Parts of the response that do not depend on the chain, except for
  // leakage off tiles the chain takes over.
  double fixed = 0.0;
  if (auto los = los_component(tx, rx, base.frequency, blockers)) fixed += std::norm(los->gain);
  struct Leak {
    std::vector<std::size_t> owners;
    GeometricPath path;
    double power = 0.0;
  };
  std::vector<Leak> leaks;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = tile_leakage(base, tx, rx, base.tiles[i], table, cir.hsf);
    if (!c) continue;
    auto it = std::find_if(leaks.begin(), leaks.end(), [&](const Leak& l) { return same_vertices(l.path, c->path); });
    if (it != leaks.end()) {
      it->owners.push_back(i);
    } else {
      leaks.push_back({{i}, c->path, std::norm(c->gain)});
    }
  }

  std::vector<char> from_tx(n), to_rx(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RectPanel& p = base.tiles[i].panel;
    from_tx[i] = p.signed_distance(tx) > 1e-9 && !is_occluded(tx, p.center(), blockers);
    to_rx[i] = p.signed_distance(rx) > 1e-9 && !is_occluded(p.center(), rx, blockers);
  }

  std::vector<std::vector<std::size_t>> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (from_tx[i] && to_rx[i]) candidates.push_back({i});
  }
  if (options.max_chain == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!from_tx[i]) continue;
      const RectPanel& a = base.tiles[i].panel;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !to_rx[j]) continue;
        const RectPanel& b = base.tiles[j].panel;
        if (a.signed_distance(b.center()) <= 1e-9 || b.signed_distance(a.center()) <= 1e-9) continue;
        if (is_occluded(a.center(), b.center(), blockers)) continue;
        candidates.push_back({i, j});
      }
    }
  }

  std::optional<TileAssignment> best;
  double best_power = 0.0;
  for (const auto& cand : candidates) {
    std::vector<std::string> ids;
    for (std::size_t i : cand) ids.push_back(base.tiles[i].id);
    std::vector<Tile> chain;
    for (std::size_t i : cand) chain.push_back(base.tiles[i]);
    std::vector<TileConfig> configs;
    try {
      for (std::size_t k = 0; k < chain.size(); ++k) {
        const Vec3 next = k + 1 < chain.size() ? chain[k + 1].panel.center() : rx;
        chain[k].config = aim_at(chain[k].panel, next - chain[k].panel.center(), options.collimate);
        configs.push_back(chain[k].config);
      }
    } catch (const DomainError&) {
      continue;
    }
    std::vector<const Tile*> ptrs;
    for (const auto& t : chain) ptrs.push_back(&t);
    const auto comps = hsf_reflect_paths(base, tx, rx, ptrs, table, cir);
    if (comps.empty()) continue;

    double power = fixed;
    for (const auto& l : leaks) {
      const bool taken = std::all_of(l.owners.begin(), l.owners.end(), [&](std::size_t o) {
        return std::find(cand.begin(), cand.end(), o) != cand.end();
      });
      if (!taken) power += l.power;
    }
    for (const auto& c : comps) power += std::norm(c.gain);

    const bool better = !best || power > best_power * (1.0 + 1e-12) ||
                        (power >= best_power * (1.0 - 1e-12) && ids < best->chain);
    if (better) {
      best = TileAssignment{rx_index, ids, configs, 0.0};
      best_power = power;
    }
  }
  if (!best) throw DomainError("no unoccluded tile chain reaches receiver " + std::to_string(rx_index));
  best->predicted_power = base.tx_power_dbmw + 10.0 * std::log10(best_power);
  return *best;
}

}  // namespace hsfsim
